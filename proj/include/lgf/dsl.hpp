#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lgf/matrix.hpp"
#include "lgf/series.hpp"

namespace lgf {

/// Parsed entry expression.
///   expr     := term (('+'|'-') term)*
///   term     := factor (('*'|'/')? factor)*      juxtaposition multiplies
///   factor   := ('-'|'+') factor | base ('^' exponent)?
///   base     := rational | p | pi | q | t | L | ident | ident '(' args ')' | '(' expr ')'
///   exponent := ['-'] integer | ident | '(' expr ')'  (evaluated as a rational)
/// A one-argument "call" of a symbol or parameter is a product: c (1 + t) = c * (1 + t).
struct Expr {
    enum class Kind { number, symbol, call, neg, add, sub, mul, div, pow };
    Kind kind = Kind::number;
    Rational number;
    std::string name;        // symbol or function name
    std::vector<Expr> args;  // operands, call arguments, or {base, exponent}
    int column = 1;          // 1-based position in the source text
};

/// ParseError with the column of the offending token.
Expr parse_expression(const std::string& text);

/// Evaluation environment of one document.
struct DslContext {
    FieldConfig cfg;
    long depth = 64;                        // truncation for generators and series inverses
    std::map<std::string, Scalar> params;   // bound scalar parameters
    std::shared_ptr<std::map<long, Mat<Series>>> frobenius_cache =
        std::make_shared<std::map<long, Mat<Series>>>();  // bessel_frob(i, j, terms) by terms
};

/// Exponents and generator arguments: rationals built from numbers, p, q and parameters.
Rational eval_rational(const Expr& e, const DslContext& ctx);
Scalar eval_scalar(const Expr& e, const DslContext& ctx);
/// Series over K[[t]] with powers of L = log t.
LogSeries eval_log_series(const Expr& e, const DslContext& ctx);
/// ParseError if the value has log terms.
Series eval_series(const Expr& e, const DslContext& ctx);
/// Rational functions; generators need an explicit degree and give exact polynomials.
RatFunc eval_ratfunc(const Expr& e, const DslContext& ctx);

Scalar parse_scalar(const std::string& text, const DslContext& ctx);
Series parse_series(const std::string& text, const DslContext& ctx);
LogSeries parse_log_series(const std::string& text, const DslContext& ctx);
RatFunc parse_ratfunc(const std::string& text, const DslContext& ctx);

/// Canonical text; parsing it back gives the same value.
std::string format_scalar(const Scalar& s);
std::string format_series(const Series& s);
std::string format_log_series(const LogSeries& s);
std::string format_ratfunc(const RatFunc& f);

}  // namespace lgf
