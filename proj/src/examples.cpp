#include "lgf/examples.hpp"

namespace lgf {

namespace {

Series t_pow(long e, const FieldConfig& f) { return Series::monomial(Scalar(1).bind(f), e); }

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

Series gmu_window(const Rational& mu, const FieldConfig& cfg, int window) {
    return gmu(mu, cfg, ipow(cfg.q, window - 1) - 1).polynomial_part();
}

ModulePresentation m_mu(const Rational& mu, const FieldConfig& cfg, long depth, int window) {
    ModulePresentation M = trivial_module(2, cfg);
    const Scalar qm = q_power(mu, cfg);
    M.A(0, 1) = t_pow(1, cfg) * (-qm);
    M.A(1, 1) = Series(qm);
    M.G(0, 1) = gmu(mu, cfg, depth);
    M.label = "m_mu";
    Mat<RatFunc> GE = zeros<RatFunc>(2, 2);
    GE(0, 1) = RatFunc(gmu_window(mu, cfg, window));
    M.generic_G = GE;
    M.generic_A = map_entries(M.A, [](const Series& s) { return RatFunc(s); });
    return M;
}

ModulePresentation m_mu_delta(const Rational& mu, const Rational& delta, const FieldConfig& cfg, long depth,
                              int window) {
    ModulePresentation M = trivial_module(3, cfg);
    const Scalar qm = q_power(mu, cfg), qd = q_power(delta, cfg);
    M.A(0, 1) = t_pow(1, cfg) * (-qm);
    M.A(0, 2) = t_pow(1, cfg) * (-qd);
    M.A(1, 1) = Series(qm);
    M.A(2, 2) = Series(qd);
    M.G(0, 1) = gmu(mu, cfg, depth);
    M.G(0, 2) = gmu(delta, cfg, depth);
    M.label = "m_mu_delta";
    Mat<RatFunc> GE = zeros<RatFunc>(3, 3);
    GE(0, 1) = RatFunc(gmu_window(mu, cfg, window));
    GE(0, 2) = RatFunc(gmu_window(delta, cfg, window));
    M.generic_G = GE;
    M.generic_A = map_entries(M.A, [](const Series& s) { return RatFunc(s); });
    return M;
}

ModulePresentation trivial_plus_twist(const FieldConfig& cfg) {
    ModulePresentation M = direct_sum(trivial_module(1, cfg), twist(trivial_module(1, cfg), q_power(1, cfg)));
    M.label = "direct_sum";
    return M;
}

Mat<Series> bessel_frobenius(const FieldConfig& cfg, long terms) {
    const Series b = bessel_b(cfg, terms), c = bessel_c(cfg, terms);
    const Series tb = derivative(b, DerivMode::t_d_dt), tc = derivative(c, DerivMode::t_d_dt);
    // rows: -f2 and f1 at L^0, normalized to the identity at t = 0
    Mat<Series> P(2, 2);
    P(0, 0) = tc + b;
    P(0, 1) = -c;
    P(1, 0) = -tb;
    P(1, 1) = b;
    Series d = det(P);
    if (!d.agrees_through(Series(Scalar(1).bind(cfg)), terms))
        throw Error(ErrorCode::SingularA, "Bessel Wronskian is not 1");
    Mat<Series> phiP = map_entries(P, [&](const Series& s) { return frobenius_substitute(s, t_pow(cfg.q, cfg), cfg.q, terms); });
    Mat<Series> D = zeros<Series>(2, 2);
    D(0, 0) = Series(Scalar(1).bind(cfg));
    D(1, 1) = Series(Scalar(cfg.p).bind(cfg));
    return truncated(mul(mul(adjugate(P), D), phiP), terms);
}

ModulePresentation bessel0(const FieldConfig& cfg, long a_terms) {
    if (cfg.q != cfg.p) throw Error(ErrorCode::InvalidField, "the Bessel module uses a p-power Frobenius");
    ModulePresentation M = trivial_module(2, cfg);
    M.omega = Omega::dt_over_t;
    M.A = bessel_frobenius(cfg, a_terms);
    M.G(0, 1) = Series(Scalar(-1).bind(cfg));
    M.G(1, 0) = t_pow(1, cfg) * (-Scalar::pi_power(2, cfg));
    M.label = "bessel0";
    return M;
}

}  // namespace lgf
