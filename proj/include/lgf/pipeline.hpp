#pragma once

#include <string>

#include "lgf/analysis.hpp"

namespace lgf {

struct AnalysisOptions {
    long special_depth = -1;  // -1: 2 p^4
    long generic_depth = 256;
    long verify_order = -1;   // -1: the full special depth
    GrowthOptions growth;     // shared by the special and generic estimators
    int frobenius_iters = 10;
    int max_passes = 24;
    bool special = true;
    bool generic = true;

    long special_depth_for(const FieldConfig& cfg) const;
    ReductionOptions reduction() const;
};

struct ModuleAnalysis {
    std::string label;
    int rank = 0;
    FieldConfig cfg;
    // special fiber
    SolutionPackage special;
    SpecialBasis special_basis;
    FiltrationReport growth_special;
    FiltrationReport frobenius_special;  // slopes of Sol(M)
    // generic fiber
    GenericPresentation generic;
    GenericSlopeResult frobenius_generic;
    GenericBasis generic_basis;
    FiltrationReport growth_generic;
    ModuleFiltration module_filtration;
    PbqVerdict pbq;
    CtResult ct;
    bool has_special = false;
    bool has_generic = false;

    Rational lambda_max() const;
};

ModuleAnalysis analyze(const ModulePresentation& M, const AnalysisOptions& opt);

/// Largest row growth of any solution basis equals b_nabla, so no reduction is needed.
Rational special_b_nabla(const ModulePresentation& M, const AnalysisOptions& opt);
Rational generic_b_nabla(const GenericPresentation& M, const AnalysisOptions& opt);

}  // namespace lgf
