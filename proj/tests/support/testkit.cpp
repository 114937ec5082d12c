#include "testkit.hpp"

#include <algorithm>
#include <sstream>

#include "lgf/analysis.hpp"
#include "lgf/examples.hpp"

namespace lgf::testkit {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

const GrowthOptions kGrowth{};
const long kTrunc = 3125;

Series t_pow(const FieldConfig& cfg, long e) { return Series::monomial(Scalar(1).bind(cfg), e); }

// Upper end of the measured bracket; nullopt for the zero series or no support in the window.
std::optional<Rational> measured(const Series& f, long p) {
    try {
        const GrowthEstimate g = measure_log_growth(f, p, kGrowth);
        if (g.minus_infinity) return std::nullopt;
        return g.upper;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientSupport) throw;
        return std::nullopt;
    }
}

std::string show(const std::optional<Rational>& r) { return r ? rat_str(*r) : "-inf"; }

}  // namespace

Rational random_rational(Rng& rng, int num) {
    static const long dens[] = {1, 1, 1, 2, 3, 5, 25};
    long a = 0;
    while (a == 0) a = uniform(rng, -num, num);
    return Rational(a, dens[uniform(rng, 0, 6)]);
}

Scalar random_scalar(Rng& rng, const FieldConfig& cfg) {
    Scalar s;
    while (s.is_zero()) {
        s = Scalar(0).bind(cfg);
        for (int j = 0; j < cfg.m; ++j)
            if (uniform(rng, 0, 2) > 0) s += Scalar::pi_power(j, cfg, random_rational(rng));
    }
    return s;
}

Scalar random_monomial(Rng& rng, const FieldConfig& cfg, long kmin, long kmax) {
    static const long units[] = {1, -1, 2, -2, 3, 4, 6, 7};
    return Scalar::pi_power(uniform(rng, kmin, kmax), cfg, Rational(units[uniform(rng, 0, 7)]));
}

Series random_polynomial(Rng& rng, const FieldConfig& cfg, int deg) {
    Series f;
    for (int e = 0; e <= deg; ++e)
        if (uniform(rng, 0, 2) == 0) f.set(e, random_scalar(rng, cfg));
    return f;
}

Series random_growth_series(Rng& rng, const FieldConfig& cfg) {
    static const Rational mus[] = {0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1};
    // integral polynomial part of degree <= 3: below the fit window even after phi (5 * 3 < 16)
    auto low_poly = [&] {
        Series u;
        while (u.is_zero())
            for (long e = 0; e <= 3; ++e)
                if (uniform(rng, 0, 1)) u.add_to(e, random_monomial(rng, cfg, 0, 4));
        return u;
    };
    Series f = low_poly() * random_monomial(rng, cfg, -4, 4) + Series::unknown(kTrunc);
    const int parts = static_cast<int>(uniform(rng, 0, 2));
    for (int i = 0; i < parts; ++i)
        f += xmu(mus[uniform(rng, 0, 4)], cfg, kTrunc) * low_poly() * random_monomial(rng, cfg, -4, 4);
    return f;
}

Outcome product_rule(std::uint64_t seed, int cases) {
    Rng rng(seed);
    const FieldConfig cfg{5, 4, 5};
    Outcome o;
    for (int c = 0; c < cases; ++c, ++o.cases) {
        const Series f = random_growth_series(rng, cfg), g = random_growth_series(rng, cfg);
        const auto lf = measured(f, cfg.p), lg = measured(g, cfg.p), lfg = measured(f * g, cfg.p);
        if (!lf || !lg) continue;
        if (lfg && *lfg > *lf + *lg + kGrowth.tol)
            o.fail("case " + std::to_string(c) + ": growth(fg) = " + show(lfg) + " > " + show(lf) + " + " + show(lg));
    }
    return o;
}

Outcome frobenius_stability(std::uint64_t seed, int cases) {
    Rng rng(seed);
    const FieldConfig cfg{5, 4, 5};
    const Series phi = t_pow(cfg, cfg.q);
    Outcome o;
    for (int c = 0; c < cases; ++c, ++o.cases) {
        const Series f = random_growth_series(rng, cfg);
        const auto lf = measured(f, cfg.p), lphi = measured(frobenius_substitute(f, phi, cfg.q), cfg.p);
        if (!lf) continue;
        if (lphi && *lphi > *lf + kGrowth.tol)
            o.fail("case " + std::to_string(c) + ": growth(phi f) = " + show(lphi) + " > " + show(lf));
    }
    return o;
}

Outcome antiderivative_rule(std::uint64_t seed, int cases) {
    Rng rng(seed);
    const FieldConfig cfg{5, 4, 5};
    Outcome o;
    for (int c = 0; c < cases; ++c, ++o.cases) {
        const Series f = random_growth_series(rng, cfg);
        const auto ld = measured(derivative(f, DerivMode::d_dt), cfg.p), lf = measured(f, cfg.p);
        if (!ld || !lf) continue;
        if (*lf > *ld + 1 + kGrowth.tol)
            o.fail("case " + std::to_string(c) + ": growth(f) = " + show(lf) + " > growth(f') + 1 = " + show(*ld + 1));
    }
    return o;
}

Outcome gauss_multiplicativity(std::uint64_t seed, int cases) {
    Rng rng(seed);
    const FieldConfig cfg{5, 2, 5};
    Outcome o;
    for (int c = 0; c < cases; ++c, ++o.cases) {
        Series f = random_polynomial(rng, cfg, 8), g = random_polynomial(rng, cfg, 8);
        if (f.is_zero() || g.is_zero()) continue;
        // |.|_0 of a bounded series is the minimum coefficient valuation
        Rational vmin = *f.terms().begin()->second.valuation();
        for (const auto& [e, a] : f.terms()) vmin = std::min<Rational>(vmin, *a.valuation());
        if (gauss_norm(f, 0) != vmin) o.fail("case " + std::to_string(c) + ": |f|_0 is not the minimum valuation");
        if (*gauss_valuation(f * g) != *gauss_valuation(f) + *gauss_valuation(g))
            o.fail("case " + std::to_string(c) + ": v(fg) != v(f) + v(g) for f = " + f.str() + ", g = " + g.str());
        const RatFunc r(f, g + t_pow(cfg, 9));
        if (*gauss_valuation(r * RatFunc(g)) != *gauss_valuation(r) + *gauss_valuation(g))
            o.fail("case " + std::to_string(c) + ": rational function valuation is not multiplicative");
    }
    return o;
}

Outcome triangular_generic_oracle(std::uint64_t seed, int cases) {
    Rng rng(seed);
    const FieldConfig cfg{5, 4, 5};
    Outcome o;
    for (int c = 0; c < cases; ++c, ++o.cases) {
        const int n = static_cast<int>(uniform(rng, 1, 4));
        Mat<RatFunc> A = zeros<RatFunc>(n, n);
        Multiset expected;
        for (int i = 0; i < n; ++i) {
            // pi^k times a Gauss unit: unit constant term, integral t-coefficient
            const long k = uniform(rng, -2, 6);
            const Scalar lead = random_monomial(rng, cfg, k, k);
            Series d = Series(lead);
            if (uniform(rng, 0, 1)) d += t_pow(cfg, 1) * (lead * random_monomial(rng, cfg, 0, 3));
            A(i, i) = RatFunc(d);
            Rational v(k, cfg.m);
            v.canonicalize();
            expected.push_back(v / cfg.log_q());
            for (int j = i + 1; j < n; ++j)
                if (uniform(rng, 0, 1)) A(i, j) = RatFunc(random_polynomial(rng, cfg, 1) * random_monomial(rng, cfg, 0, 2));
        }
        std::sort(expected.begin(), expected.end());
        try {
            const Multiset got = frobenius_slopes_generic(A, cfg).slopes;
            if (got != expected) {
                std::ostringstream os;
                os << "case " << c << ": got";
                for (const auto& x : got) os << " " << rat_str(x);
                os << ", oracle";
                for (const auto& x : expected) os << " " << rat_str(x);
                o.fail(os.str());
            }
        } catch (const Error& e) {
            o.fail("case " + std::to_string(c) + ": " + e.what());
        }
    }
    return o;
}

namespace {

using Poly = std::vector<Scalar>;  // coefficients, lowest degree first

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Scalar(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// det(X - C) by the Leibniz expansion.
Poly leibniz_char_poly(const Mat<Scalar>& C, const FieldConfig& cfg) {
    const int n = static_cast<int>(C.rows());
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    Poly total(static_cast<size_t>(n) + 1, Scalar(0));
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)];
        Poly term{Scalar(inversions % 2 ? -1 : 1)};
        for (int i = 0; i < n; ++i) {
            const int j = perm[static_cast<size_t>(i)];
            term = poly_mul(term, i == j ? Poly{-C(i, j), Scalar(1)} : Poly{-C(i, j)});
        }
        for (size_t k = 0; k < term.size(); ++k) total[k] += term[k];
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& x : total) x = x.bind(cfg);
    return total;
}

// Root valuations from the lower hull of (i, v(a_i)), found by trying every segment.
Multiset brute_root_valuations(const Poly& a) {
    const int n = static_cast<int>(a.size()) - 1;
    Multiset out;
    int i = 0;  // a_0 != 0: no zero roots
    while (i < n) {
        std::optional<Rational> best;
        int bj = i;
        for (int j = i + 1; j <= n; ++j) {
            if (a[static_cast<size_t>(j)].is_zero()) continue;
            const Rational s = (*a[static_cast<size_t>(j)].valuation() - *a[static_cast<size_t>(i)].valuation()) /
                               Rational(j - i);
            if (!best || s <= *best) {
                best = s;
                bj = j;
            }
        }
        for (int k = i; k < bj; ++k) out.push_back(-*best);
        i = bj;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string slopes_str(const Multiset& m) {
    std::string s;
    for (const auto& x : m) s += " " + rat_str(x);
    return s;
}

}  // namespace

Outcome special_eigen_oracle(std::uint64_t seed, int cases, int n) {
    Rng rng(seed);
    const FieldConfig cfg{5, 2, 5};
    Outcome o;
    for (int c = 0; c < cases; ++c, ++o.cases) {
        // random matrix against the brute-force characteristic polynomial
        Mat<Scalar> C = zeros<Scalar>(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (uniform(rng, 0, 3)) C(i, j) = random_scalar(rng, cfg) * random_monomial(rng, cfg, -2, 3);
        if (det(C).is_zero()) continue;
        Multiset expected = brute_root_valuations(leibniz_char_poly(C, cfg));
        for (auto& x : expected) x /= cfg.log_q();
        const Multiset got = frobenius_slopes_special(C, cfg);
        if (got != expected) o.fail("random case " + std::to_string(c) + ": got" + slopes_str(got) + ", oracle" + slopes_str(expected));

        // P T P^{-1} with T upper triangular: eigenvalues are the diagonal of T
        Mat<Scalar> T = zeros<Scalar>(n, n), P = zeros<Scalar>(n, n);
        Multiset diag;
        for (int i = 0; i < n; ++i) {
            T(i, i) = random_monomial(rng, cfg, -3, 4);
            diag.push_back(*T(i, i).valuation() / cfg.log_q());
            for (int j = i + 1; j < n; ++j) T(i, j) = random_scalar(rng, cfg);
            for (int j = 0; j < n; ++j) P(i, j) = uniform(rng, 0, 2) ? random_scalar(rng, cfg) : Scalar(0).bind(cfg);
        }
        if (det(P).is_zero()) continue;
        std::sort(diag.begin(), diag.end());
        const Multiset conj = frobenius_slopes_special(mul(mul(P, T), inverse(P)), cfg);
        if (conj != diag) o.fail("conjugate case " + std::to_string(c) + ": got" + slopes_str(conj) + ", diagonal" + slopes_str(diag));
    }
    return o;
}

std::vector<Composite> random_composites(std::uint64_t seed, int count) {
    Rng rng(seed);
    const FieldConfig cfg{5, 4, 5};
    const long depth = 2 * 625;
    static const Rational mus[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4), 1};
    auto rank_one = [&](std::string& name) {
        const Rational e(uniform(rng, -4, 4), 4);
        name = "K(q^" + rat_str(e) + ")";
        return twist(trivial_module(1, cfg), q_power(e, cfg));
    };
    // a block of rank at most max_rank
    auto block = [&](int max_rank, std::string& name) -> ModulePresentation {
        for (;;) {
            const long kind = uniform(rng, 0, 5);
            const Rational mu = mus[uniform(rng, 0, 3)];
            if (kind == 0) return rank_one(name);
            if (kind == 1 && max_rank >= 2) {
                name = "M(" + rat_str(mu) + ")";
                return m_mu(mu, cfg, depth);
            }
            if (kind == 2 && max_rank >= 2) {
                name = "dual(M(" + rat_str(mu) + "))";
                return dual(m_mu(mu, cfg, depth));
            }
            if (kind == 3 && max_rank >= 3) {
                name = "M(1/4, 3/4)";
                return m_mu_delta(Rational(1, 4), Rational(3, 4), cfg, depth);
            }
            if (kind == 4 && max_rank >= 2) {
                name = "K + K(q)";
                return trivial_plus_twist(cfg);
            }
            if (kind == 5 && max_rank >= 4) {
                name = "M(" + rat_str(mu) + ") x dual";
                const ModulePresentation M = m_mu(mu, cfg, depth);
                return tensor(M, dual(M));
            }
        }
    };
    std::vector<Composite> out;
    while (static_cast<int>(out.size()) < count) {
        Composite c;
        c.module = block(4, c.recipe);
        const long ops = uniform(rng, 1, 2);
        bool pushed = false;
        for (long k = 0; k < ops && !pushed; ++k) {
            std::string name;
            switch (uniform(rng, 0, 4)) {
                case 0:
                    if (c.module.rank < 4) {
                        ModulePresentation N = block(4 - c.module.rank, name);
                        c.module = direct_sum(c.module, N);
                        c.recipe = "(" + c.recipe + ") + (" + name + ")";
                    }
                    break;
                case 1: {
                    ModulePresentation N = rank_one(name);
                    c.module = tensor(c.module, N);
                    c.recipe = "(" + c.recipe + ") x " + name;
                    break;
                }
                case 2: {
                    const Scalar s = random_monomial(rng, cfg, -4, 4);
                    c.module = twist(c.module, s);
                    c.recipe = "twist(" + c.recipe + ", " + s.str() + ")";
                    break;
                }
                case 3:
                    c.module = dual(c.module);
                    c.recipe = "dual(" + c.recipe + ")";
                    break;
                default:
                    c.module = pushforward(c.module, 2);
                    c.recipe = "pushforward(" + c.recipe + ", 2)";
                    pushed = true;
            }
        }
        c.module.label = "composite " + std::to_string(out.size() + 1) + ": " + c.recipe;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace lgf::testkit
