#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lgf/checks.hpp"
#include "lgf/module.hpp"

// Randomized generators and independent oracles shared by the property tests
// and the acceptance driver.
namespace lgf::testkit {

struct Outcome {
    bool pass = true;
    long cases = 0;
    std::string detail;  // first counterexample
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Rng = std::mt19937_64;

Rational random_rational(Rng& rng, int num = 9);
/// Nonzero element of K with every pi-coefficient a small rational.
Scalar random_scalar(Rng& rng, const FieldConfig& cfg);
/// Nonzero c * pi^k with a unit rational c.
Scalar random_monomial(Rng& rng, const FieldConfig& cfg, long kmin, long kmax);
/// Exact polynomial of degree <= deg with random coefficients (may be zero).
Series random_polynomial(Rng& rng, const FieldConfig& cfg, int deg);
/// Sums of c P(t) x_mu with deg P <= 3 plus an integral cubic, truncated at 5^5.
/// Supports stay regular on the fit window, which is what the estimator assumes.
Series random_growth_series(Rng& rng, const FieldConfig& cfg);

// Series kernel invariants.
Outcome product_rule(std::uint64_t seed, int cases);
Outcome frobenius_stability(std::uint64_t seed, int cases);
Outcome antiderivative_rule(std::uint64_t seed, int cases);
Outcome gauss_multiplicativity(std::uint64_t seed, int cases);

// Frobenius slope oracles.
/// Generic slopes of random triangular A against the Gauss valuations of its diagonal.
Outcome triangular_generic_oracle(std::uint64_t seed, int cases);
/// Special slopes of random n x n matrices against a Leibniz characteristic
/// polynomial with a brute-force hull, and of conjugated triangular matrices
/// against their diagonal valuations.
Outcome special_eigen_oracle(std::uint64_t seed, int cases, int n);

// Randomized composites of the corpus building blocks.
struct Composite {
    std::string recipe;
    ModulePresentation module;
};
std::vector<Composite> random_composites(std::uint64_t seed, int count);

}  // namespace lgf::testkit
