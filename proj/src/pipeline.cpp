#include "lgf/pipeline.hpp"

namespace lgf {

namespace {

Rational max_growth(const std::vector<GrowthEstimate>& rows) {
    Rational b = 0;
    bool first = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        const GrowthEstimate& g = rows[i];
        if (g.minus_infinity) continue;
        if (!g.snapped)
            throw Error(ErrorCode::UnstableReduction, "row " + std::to_string(i + 1) + " did not snap: " + g.str());
        if (first || g.upper > b) b = g.upper;
        first = false;
    }
    return b;
}

}  // namespace

long AnalysisOptions::special_depth_for(const FieldConfig& cfg) const {
    if (special_depth >= 0) return special_depth;
    return 2 * cfg.p * cfg.p * cfg.p * cfg.p;
}

ReductionOptions AnalysisOptions::reduction() const {
    ReductionOptions r;
    r.growth = growth;
    r.max_passes = max_passes;
    return r;
}

Rational ModuleAnalysis::lambda_max() const {
    if (frobenius_generic.slopes.empty()) return 0;
    return frobenius_generic.slopes.back();
}

ModuleAnalysis analyze(const ModulePresentation& M, const AnalysisOptions& opt) {
    ModuleAnalysis a;
    a.label = M.label;
    a.rank = M.rank;
    a.cfg = M.cfg;
    const ReductionOptions ro = opt.reduction();
    if (opt.special) {
        a.special = solve_special(M, opt.special_depth_for(M.cfg), opt.verify_order);
        a.special_basis = reduce_special(a.special, M.cfg.p, ro);
        a.growth_special = growth_filtration(a.special_basis);
        a.frobenius_special =
            filtration_from_multiset(FiltrationKind::frobenius_special, frobenius_slopes_special(a.special.C, M.cfg));
        a.has_special = true;
    }
    if (opt.generic) {
        a.generic = to_generic(M);
        a.frobenius_generic = frobenius_slopes_generic(a.generic, opt.frobenius_iters);
        GenericExpansion E = solve_generic(a.generic, opt.generic_depth);
        a.generic_basis = reduce_generic(E, M.cfg.p, ro, a.has_special ? &a.special_basis : nullptr);
        a.growth_generic = growth_filtration(a.generic_basis);
        a.module_filtration = module_filtration(a.growth_generic);
        a.pbq = pbq_test(a.generic, a.generic_basis, a.lambda_max(), opt.frobenius_iters);
        a.has_generic = true;
    }
    if (a.has_special && a.has_generic) a.ct = compare_ct(a.growth_special, a.frobenius_special.slopes, a.lambda_max());
    return a;
}

Rational special_b_nabla(const ModulePresentation& M, const AnalysisOptions& opt) {
    SolutionPackage S = solve_special(M, opt.special_depth_for(M.cfg), opt.verify_order);
    std::vector<GrowthEstimate> rows;
    for (Eigen::Index i = 0; i < S.Y.rows(); ++i) {
        std::vector<LogSeries> r;
        for (Eigen::Index j = 0; j < S.Y.cols(); ++j) r.push_back(S.Y(i, j));
        rows.push_back(row_growth(r, M.cfg.p, opt.growth));
    }
    return max_growth(rows);
}

Rational generic_b_nabla(const GenericPresentation& M, const AnalysisOptions& opt) {
    GenericExpansion E = solve_generic(M, opt.generic_depth);
    const int n = M.rank;
    std::vector<GrowthEstimate> rows;
    for (int r = 0; r < n; ++r) {
        Mat<RatFunc> row(E.depth + 1, n);
        for (long k = 0; k <= E.depth; ++k)
            for (int j = 0; j < n; ++j) row(k, j) = E.U[static_cast<size_t>(k)](r, j);
        rows.push_back(row_growth(row, M.cfg.p, opt.growth));
    }
    return max_growth(rows);
}

}  // namespace lgf
