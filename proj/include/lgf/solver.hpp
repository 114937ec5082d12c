#pragma once

#include <string>
#include <vector>

#include "lgf/module.hpp"

namespace lgf {

/// Row k of Y is the solution f_k on the basis: f_k(e_j) = Y_kj.
struct SolutionPackage {
    Mat<LogSeries> Y;
    Mat<Scalar> C;  // phi(f_k) = sum_l C_kl f_l
    long depth = 0;
    long residual_order = -1;
};

/// Divided-derivative expansion at the generic point: row r of
/// sum_k U[k] (X - t)^k is a horizontal solution with value e_r at X = t.
struct GenericExpansion {
    std::vector<Mat<RatFunc>> U;
    long depth = 0;
};

/// verify_order < 0 checks phi(Y) = C Y A through the full depth.
SolutionPackage solve_special(const ModulePresentation& M, long depth, long verify_order = -1);

GenericExpansion solve_generic(const GenericPresentation& M, long depth, long degree_cap = 4096);

/// Re-checks the differential equation, Y(0) and the Frobenius identity from scratch.
ValidationReport verify_package(const ModulePresentation& M, const SolutionPackage& S, long order = -1);

/// Columns solution_index, basis_index, t_exponent, log_degree,
/// valuation_numerator, valuation_denominator (indices start at 1).
std::string solution_csv(const SolutionPackage& S);

/// Y A with log-series entries, cut at n.
Mat<LogSeries> times_series(const Mat<LogSeries>& Y, const Mat<Series>& A, long n);

}  // namespace lgf
