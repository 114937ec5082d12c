#pragma once

#include "lgf/module.hpp"

namespace lgf {

/// The rank-two module with A = [[1, -q^mu t], [0, q^mu]], G = [[0, g_mu], [0, 0]].
/// g_mu is cut at t^depth; the generic fiber uses its first `window` terms.
ModulePresentation m_mu(const Rational& mu, const FieldConfig& cfg, long depth, int window = 5);
ModulePresentation m_mu_delta(const Rational& mu, const Rational& delta, const FieldConfig& cfg, long depth,
                              int window = 5);
/// K[[t]]_0 + K[[t]]_0(q).
ModulePresentation trivial_plus_twist(const FieldConfig& cfg);
/// Frobenius matrix P^{-1} diag(1, p) phi(P) of the Bessel module at 0, with P the
/// t^0 L^0 part of the normalized solution matrix; known through t^terms.
Mat<Series> bessel_frobenius(const FieldConfig& cfg, long terms);
/// Bessel log-module at 0 (omega = dt/t); A known through t^a_terms.
ModulePresentation bessel0(const FieldConfig& cfg, long a_terms);

/// g_mu polynomial with exponents q^i - 1, i < window.
Series gmu_window(const Rational& mu, const FieldConfig& cfg, int window);

}  // namespace lgf
