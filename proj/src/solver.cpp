#include "lgf/solver.hpp"

#include <sstream>

namespace lgf {

namespace {

using Terms = std::vector<std::pair<long, Mat<Scalar>>>;

// Nonzero coefficient matrices of G with exponent in [1, hi] (or [0, hi]).
Terms coefficient_terms(const Mat<Series>& G, long lo, long hi) {
    std::map<long, Mat<Scalar>> acc;
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index j = 0; j < G.cols(); ++j)
            for (const auto& [e, c] : G(i, j).terms()) {
                if (e < lo || e > hi) continue;
                auto it = acc.find(e);
                if (it == acc.end()) it = acc.emplace(e, zeros<Scalar>(G.rows(), G.cols())).first;
                it->second(i, j) = c;
            }
    return Terms(acc.begin(), acc.end());
}

Mat<Scalar> scaled(const Mat<Scalar>& a, const Rational& r) {
    Mat<Scalar> m = a;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) *= r;
    return m;
}

Mat<LogSeries> assemble(const std::vector<std::vector<Mat<Scalar>>>& layers, long depth, int n) {
    Mat<LogSeries> Y = zeros<LogSeries>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Series> parts;
            size_t used = 1;
            for (size_t l = 0; l < layers.size(); ++l) {
                Series s = Series::unknown(depth);
                for (long k = 0; k <= depth; ++k) s.set(k, layers[l][static_cast<size_t>(k)](i, j));
                if (!s.is_zero()) used = l + 1;
                parts.push_back(std::move(s));
            }
            LogSeries f;
            for (size_t l = 0; l < used; ++l) f.set_part(l, parts[l]);
            Y(i, j) = f;
        }
    return Y;
}

std::string locate(Eigen::Index i, Eigen::Index j, const LogSeries& d) {
    for (size_t n = 0; n < d.parts().size(); ++n)
        if (!d.parts()[n].is_zero())
            return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") at t^" +
                   std::to_string(d.parts()[n].low()) + " L^" + std::to_string(n);
    return "";
}

// First nonzero residual of phi(Y) - C Y A through order n, or "".
std::string frobenius_residual(const ModulePresentation& M, const Mat<LogSeries>& Y, const Mat<Scalar>& C, long n) {
    Mat<LogSeries> Yn = map_entries(Y, [n](const LogSeries& f) { return f.truncated(n); });
    Mat<LogSeries> lhs =
        map_entries(Yn, [&](const LogSeries& f) { return frobenius_substitute(f, M.phi_t, M.cfg.q, n); });
    Mat<LogSeries> YA = times_series(Yn, M.A, n);
    for (Eigen::Index i = 0; i < Y.rows(); ++i)
        for (Eigen::Index j = 0; j < Y.cols(); ++j) {
            LogSeries rhs;
            for (Eigen::Index k = 0; k < Y.rows(); ++k)
                if (!C(i, k).is_zero()) rhs += YA(k, j) * C(i, k);
            LogSeries d = (lhs(i, j) - rhs).truncated(n);
            if (!d.is_zero()) return locate(i, j, d);
        }
    return "";
}

}  // namespace

Mat<LogSeries> times_series(const Mat<LogSeries>& Y, const Mat<Series>& A, long n) {
    Mat<LogSeries> r = zeros<LogSeries>(Y.rows(), A.cols());
    for (Eigen::Index i = 0; i < Y.rows(); ++i)
        for (Eigen::Index k = 0; k < Y.cols(); ++k) {
            if (Y(i, k).is_exact_zero()) continue;
            for (Eigen::Index j = 0; j < A.cols(); ++j) {
                if (A(k, j).is_exact_zero()) continue;
                LogSeries prod;
                for (size_t l = 0; l < Y(i, k).parts().size(); ++l)
                    prod.set_part(l, (Y(i, k).parts()[l] * A(k, j)).truncated(n));
                r(i, j) += prod;
            }
        }
    return r;
}

SolutionPackage solve_special(const ModulePresentation& M, long depth, long verify_order) {
    const int n = M.rank;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (!M.G(i, j).is_zero() && M.G(i, j).low() < 0)
                throw Error(ErrorCode::NegativeExponentOverflow, "G has negative powers of t");
    const Scalar one = Scalar(1).bind(M.cfg);
    std::vector<std::vector<Mat<Scalar>>> layers;
    if (M.omega == Omega::dt) {
        depth = std::min(depth, sat_add(min_trunc(M.G), 1));
        Terms G = coefficient_terms(M.G, 0, depth);
        std::vector<Mat<Scalar>> Y(static_cast<size_t>(depth) + 1);
        Y[0] = eye<Scalar>(n, one);
        for (long k = 0; k < depth; ++k) {
            Mat<Scalar> s = zeros<Scalar>(n, n);
            for (const auto& [j, Gj] : G) {
                if (j > k) break;
                s = add(s, mul(Y[static_cast<size_t>(k - j)], Gj));
            }
            Y[static_cast<size_t>(k + 1)] = scaled(s, Rational(1) / Rational(k + 1));
        }
        layers.push_back(std::move(Y));
    } else {
        depth = std::min(depth, min_trunc(M.G));
        Mat<Scalar> G0 = coeff_matrix(M.G, 0);
        if (!is_nilpotent(G0)) throw Error(ErrorCode::NotNilpotentResidue, "G(0) is not nilpotent");
        Terms G = coefficient_terms(M.G, 1, depth);
        // Y^(l)_0 = G0^l / l!
        layers.assign(static_cast<size_t>(n), std::vector<Mat<Scalar>>(static_cast<size_t>(depth) + 1));
        std::vector<Mat<Scalar>> g0pow(static_cast<size_t>(n));
        g0pow[0] = eye<Scalar>(n, one);
        for (int l = 1; l < n; ++l) g0pow[static_cast<size_t>(l)] = mul(g0pow[static_cast<size_t>(l - 1)], G0);
        Rational fact = 1;
        for (int l = 0; l < n; ++l) {
            if (l > 0) fact *= l;
            layers[static_cast<size_t>(l)][0] = scaled(g0pow[static_cast<size_t>(l)], Rational(1) / fact);
        }
        for (long k = 1; k <= depth; ++k) {
            // (k I - G0)^{-1} = sum_j G0^j / k^{j+1}
            Mat<Scalar> res = zeros<Scalar>(n, n);
            Rational kp = k;
            for (int j = 0; j < n; ++j) {
                res = add(res, scaled(g0pow[static_cast<size_t>(j)], Rational(1) / kp));
                kp *= k;
            }
            for (int l = n - 1; l >= 0; --l) {
                auto& Yl = layers[static_cast<size_t>(l)];
                Mat<Scalar> rhs = zeros<Scalar>(n, n);
                for (const auto& [b, Gb] : G) {
                    if (b > k) break;
                    rhs = add(rhs, mul(Yl[static_cast<size_t>(k - b)], Gb));
                }
                if (l + 1 < n)
                    rhs = sub(rhs, scaled(layers[static_cast<size_t>(l + 1)][static_cast<size_t>(k)], Rational(l + 1)));
                Yl[static_cast<size_t>(k)] = mul(rhs, res);
            }
        }
    }
    SolutionPackage S;
    S.depth = depth;
    S.Y = assemble(layers, depth, n);
    S.C = inverse(coeff_matrix(M.A, 0));
    long order = verify_order >= 0 ? std::min(verify_order, depth) : depth;
    order = std::min(order, min_trunc(M.A));
    std::string bad = frobenius_residual(M, S.Y, S.C, order);
    if (!bad.empty())
        throw Error(ErrorCode::FrobeniusMatrixNotConstant, "phi(Y) != C Y A at " + bad + " for " + M.label);
    S.residual_order = order;
    return S;
}

GenericExpansion solve_generic(const GenericPresentation& M, long depth, long degree_cap) {
    if (depth < 2) throw Error(ErrorCode::InsufficientSupport, "generic depth must be at least 2");
    GenericExpansion E;
    E.depth = depth;
    const int n = M.rank;
    E.U.push_back(eye<RatFunc>(n, RatFunc(Scalar(1).bind(M.cfg))));
    for (long k = 0; k < depth; ++k) {
        const Mat<RatFunc>& Z = E.U.back();
        Mat<RatFunc> next = add(map_entries(Z, [](const RatFunc& f) { return derivative(f); }), mul(M.G, Z));
        RatFunc inv(Scalar(Rational(1) / Rational(k + 1)).bind(M.cfg));
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                next(i, j) *= inv;
                for (const Series* s : {&next(i, j).num(), &next(i, j).den()})
                    if (!s->is_zero() && s->high() - s->low() > degree_cap)
                        throw Error(ErrorCode::DenominatorBlowup,
                                    "degree span above " + std::to_string(degree_cap) + " at k = " +
                                        std::to_string(k + 1));
            }
        E.U.push_back(std::move(next));
    }
    return E;
}

ValidationReport verify_package(const ModulePresentation& M, const SolutionPackage& S, long order) {
    ValidationReport r;
    const long n = order >= 0 ? std::min(order, S.depth) : S.depth;
    r.order = n;
    const int rk = M.rank;
    // differential equation
    const DerivMode dm = M.omega == Omega::dt ? DerivMode::d_dt : DerivMode::t_d_dt;
    const long dn = M.omega == Omega::dt ? n - 1 : n;
    Mat<LogSeries> YG = times_series(S.Y, M.G, dn);
    std::string bad;
    for (Eigen::Index i = 0; i < rk && bad.empty(); ++i)
        for (Eigen::Index j = 0; j < rk && bad.empty(); ++j) {
            LogSeries d = (derivative(S.Y(i, j), dm) - YG(i, j)).truncated(dn);
            if (!d.is_zero()) bad = locate(i, j, d);
        }
    if (bad.empty())
        r.checks.push_back("differential_equation");
    else
        r.fail("differential equation residual at " + bad);
    // normalization at t = 0
    bool id = true;
    for (Eigen::Index i = 0; i < rk; ++i)
        for (Eigen::Index j = 0; j < rk; ++j)
            if (S.Y(i, j).part(0).coeff(0) != Scalar(i == j ? 1 : 0)) id = false;
    if (id)
        r.checks.push_back("normalization");
    else
        r.fail("L^0 t^0 block of Y is not the identity");
    // Frobenius
    long fo = std::min(n, min_trunc(M.A));
    std::string fb = frobenius_residual(M, S.Y, S.C, fo);
    if (fb.empty())
        r.checks.push_back("frobenius_constant");
    else
        r.fail("phi(Y) - C Y A residual at " + fb);
    return r;
}

std::string solution_csv(const SolutionPackage& S) {
    std::ostringstream os;
    os << "solution_index,basis_index,t_exponent,log_degree,valuation_numerator,valuation_denominator\n";
    for (Eigen::Index i = 0; i < S.Y.rows(); ++i)
        for (Eigen::Index j = 0; j < S.Y.cols(); ++j) {
            const auto& parts = S.Y(i, j).parts();
            std::map<std::pair<long, size_t>, Rational> rows;
            for (size_t l = 0; l < parts.size(); ++l)
                for (const auto& [e, c] : parts[l].terms()) rows[{e, l}] = *c.valuation();
            for (const auto& [key, v] : rows)
                os << i + 1 << "," << j + 1 << "," << key.first << "," << key.second << "," << v.get_num().get_str()
                   << "," << v.get_den().get_str() << "\n";
        }
    return os.str();
}

}  // namespace lgf
