#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgf/solver.hpp"

namespace lgf {

using Multiset = std::vector<Rational>;

/// Lower convex hull of (0,0) and the partial sums of the sorted multiset.
struct NewtonPolygon {
    std::vector<std::pair<Rational, Rational>> vertices;
    Multiset slopes;
    long width() const { return static_cast<long>(slopes.size()); }
    /// Height at integer abscissa x (0 <= x <= width).
    Rational height(long x) const;
};

NewtonPolygon newton_polygon(Multiset ms);

enum class NpRelation { above_same_endpoints, equal, crossing, endpoint_mismatch };
const char* np_relation_name(NpRelation r);
/// Where `a` lies relative to `b`.
NpRelation np_compare(const NewtonPolygon& a, const NewtonPolygon& b);
/// lambda_{i+1} - lambda_i <= 1 for all i.
bool gap_check(const NewtonPolygon& np);

enum class FiltrationKind { growth_special, growth_generic, frobenius_special, frobenius_generic };
const char* filtration_kind_name(FiltrationKind k);

struct FiltrationReport {
    FiltrationKind kind = FiltrationKind::growth_special;
    int rank = 0;
    std::vector<Rational> breakpoints;
    std::vector<int> dims;  // dims[i] on [breakpoints[i], breakpoints[i+1])
    Multiset slopes;
    std::vector<GrowthEstimate> rows;  // per-row estimates for growth kinds
    /// Jump function: number of slopes <= lambda.
    int dim_at(const Rational& lambda) const;
};

FiltrationReport filtration_from_multiset(FiltrationKind kind, Multiset ms);
/// Largest breakpoint.
Rational b_nabla(const FiltrationReport& r);

/// Newton slopes of det(X - C), divided by log_p q.
Multiset frobenius_slopes_special(const Mat<Scalar>& C, const FieldConfig& cfg);

struct GenericSlopeResult {
    Multiset slopes;
    std::vector<Rational> partial_sums;  // s_k
    int iterations = 0;
    bool via_invariants = false;
};
/// Exterior-power spectral iteration on phi(e_j) = sum_i e_i A_ij, phi(t) = t^q.
GenericSlopeResult frobenius_slopes_generic(const Mat<RatFunc>& A, const FieldConfig& cfg, int iters = 10);
/// Uses A when known; otherwise the rank-two invariants route on the truncated A.
GenericSlopeResult frobenius_slopes_generic(const GenericPresentation& M, int iters = 10);

/// Solver rows with their growth; the special rows are Y rows, the generic rows
/// are the (X - t)-expansions of sum_k U_k, stored as (depth+1) x n matrices.
struct SpecialBasis {
    std::vector<std::vector<LogSeries>> rows;
    std::vector<GrowthEstimate> growth;
};
struct GenericBasis {
    std::vector<Mat<RatFunc>> rows;  // 0 x 0 for transported rows
    std::vector<GrowthEstimate> growth;
    std::vector<bool> transported;
};

struct ReductionOptions {
    GrowthOptions growth;
    int max_passes = 24;
};

GrowthEstimate row_growth(const std::vector<LogSeries>& row, long p, const GrowthOptions& opt, int* peak_col = nullptr);
GrowthEstimate row_growth(const Mat<RatFunc>& row, long p, const GrowthOptions& opt, int* peak_col = nullptr);

SpecialBasis reduce_special(const SolutionPackage& S, long p, const ReductionOptions& opt);
/// With `special`, bounded log-free special solutions whose coefficients are not
/// constants are Taylor-expanded at the generic point: such a row has bounded
/// (X - t)-coefficients and replaces a generic row of positive growth.
GenericBasis reduce_generic(const GenericExpansion& E, long p, const ReductionOptions& opt,
                            const SpecialBasis* special = nullptr);

/// UnstableReduction when a row estimate did not snap.
FiltrationReport growth_filtration(const SpecialBasis& B, FiltrationKind kind = FiltrationKind::growth_special);
FiltrationReport growth_filtration(const GenericBasis& B);

/// Dimension profile of M^lambda = (Sol_lambda)^perp on the generic fiber.
struct ModuleFiltration {
    std::vector<Rational> breakpoints;
    std::vector<int> dims;  // dim M^lambda on [breakpoints[i], breakpoints[i+1]); n below the first
    Multiset slopes;
};
ModuleFiltration module_filtration(const FiltrationReport& generic_growth);

struct PbqVerdict {
    bool is_pbq = false;
    int bounded_solution_dim = 0;
    Multiset bounded_slope_multiset;
    bool multiset_computed = false;
    Rational lambda_max_generic;
};

/// Bounded generic solutions W, the action w -> phi(w) A^{-1} on W, and its slopes.
PbqVerdict pbq_test(const GenericPresentation& M, const GenericBasis& B, const Rational& lambda_max, int iters = 10);

struct Interval {
    std::optional<Rational> lo;  // nullopt: -infinity
    std::optional<Rational> hi;  // nullopt: +infinity; half-open [lo, hi)
};
std::string interval_str(const Interval& i);

struct CtResult {
    Rational lambda_max;
    std::vector<Rational> grid;
    std::vector<int> growth_dims;
    std::vector<int> frobenius_dims;
    bool containment = true;
    bool equality = true;
    std::vector<Interval> strict_locus;
};

/// Compares Sol_lambda with S_{lambda - lambda_max}(Sol) on breakpoints and midpoints.
CtResult compare_ct(const FiltrationReport& growth_special, const Multiset& sol_frobenius, const Rational& lambda_max);

}  // namespace lgf
