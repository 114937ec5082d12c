#pragma once

#include <stdexcept>
#include <string>

namespace lgf {

enum class ErrorCode {
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    NegativeExponentOverflow,
    ResidueObstruction,
    NotAFrobeniusLift,
    EmptySeries,
    InsufficientSupport,
    RelationNotSatisfied,
    SingularA,
    FormMismatch,
    ZeroTwist,
    NonPolynomialEntry,
    NotNilpotentResidue,
    FrobeniusMatrixNotConstant,
    DenominatorBlowup,
    SingularMatrix,
    NonConvergent,
    UnstableReduction,
    SubspaceNotStable,
    WidthMismatch,
    ParseError,
    IllegalExponent,
    ValidationFailed,
    SchemaError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(error_name(c)) + ": " + what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lgf
