#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgf/matrix.hpp"

namespace lgf {

enum class Omega { dt, dt_over_t };

const char* omega_name(Omega w);

/// (phi, nabla)-module over K[[t]]_0 given by phi(e_j) = sum_i e_i A_ij and
/// nabla(e_j) = sum_i e_i G_ij omega.
struct ModulePresentation {
    int rank = 1;
    Mat<Series> A;
    Mat<Series> G;
    Omega omega = Omega::dt;
    Series phi_t;
    FieldConfig cfg;
    std::string label;
    // Exact generic-fiber data (dt normalization) used when A or G is a truncated
    // series; G must agree with the special G on its polynomial window.
    std::optional<Mat<RatFunc>> generic_A;
    std::optional<Mat<RatFunc>> generic_G;
};

struct GenericPresentation {
    int rank = 1;
    FieldConfig cfg;
    Mat<RatFunc> G;                 // dt normalization
    std::optional<Mat<RatFunc>> A;  // absent when A is only known as a truncated series
    Mat<Series> A_series;
};

struct ValidationReport {
    bool pass = true;
    long order = -1;  // t-degree through which identities were compared
    std::vector<std::string> checks;
    std::vector<std::string> failures;
    void fail(const std::string& what) {
        pass = false;
        failures.push_back(what);
    }
};

ModulePresentation trivial_module(int rank, const FieldConfig& cfg);

/// tol_order < 0: compare through everything that is known on both sides.
ValidationReport validate(const ModulePresentation& M, long tol_order = -1);

ModulePresentation dual(const ModulePresentation& M);
ModulePresentation tensor(const ModulePresentation& M, const ModulePresentation& N);
ModulePresentation direct_sum(const ModulePresentation& M, const ModulePresentation& N);
ModulePresentation twist(const ModulePresentation& M, const Scalar& c);
ModulePresentation pushforward(const ModulePresentation& M, int a);
/// New basis e'_j = sum_i e_i P_ij for a constant invertible P.
ModulePresentation change_basis(const ModulePresentation& M, const Mat<Scalar>& P);

GenericPresentation to_generic(const ModulePresentation& M);
GenericPresentation dual(const GenericPresentation& M);
GenericPresentation tensor(const GenericPresentation& M, const GenericPresentation& N);

/// Rows and columns [lo, hi): a submodule block when lo = 0, a quotient block when hi = n.
ModulePresentation block(const ModulePresentation& M, int lo, int hi);
GenericPresentation block(const GenericPresentation& M, int lo, int hi);
/// Symmetric square: the symmetric tensors e_i e_j + e_j e_i (i <= j), a submodule of M (x) M.
ModulePresentation sym2(const ModulePresentation& M);
/// Sizes r (0 < r < n) for which e_1..e_r span a (phi, nabla)-submodule.
std::vector<int> stable_prefixes(const GenericPresentation& M);

/// phi(omega)/omega as a series.
Series omega_factor(const ModulePresentation& M, long cap);

/// True if the presentation uses phi(t) = t^q.
bool standard_lift(const ModulePresentation& M);

}  // namespace lgf
