#include "lgf/module.hpp"

namespace lgf {

const char* omega_name(Omega w) { return w == Omega::dt ? "dt" : "dt/t"; }

namespace {

std::string pos(Eigen::Index i, Eigen::Index j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

Series t_power(long e, const FieldConfig& f) { return Series::monomial(Scalar(1).bind(f), e); }

struct GenericParts {
    std::optional<Mat<RatFunc>> A;
    Mat<RatFunc> G;
};

std::optional<GenericParts> generic_parts(const ModulePresentation& M) {
    try {
        GenericPresentation g = to_generic(M);
        return GenericParts{g.A, g.G};
    } catch (const Error&) {
        return std::nullopt;
    }
}

Mat<RatFunc> to_ratfunc(const Mat<Series>& a) {
    return map_entries(a, [](const Series& s) { return RatFunc(s); });
}

}  // namespace

bool standard_lift(const ModulePresentation& M) {
    return M.phi_t.exact() && M.phi_t.size() == 1 && M.phi_t.low() == M.cfg.q && M.phi_t.coeff(M.cfg.q) == Scalar(1);
}

ModulePresentation trivial_module(int rank, const FieldConfig& cfg) {
    ModulePresentation M;
    M.rank = rank;
    M.cfg = cfg;
    M.A = eye<Series>(rank, Series(Scalar(1).bind(cfg)));
    M.G = zeros<Series>(rank, rank);
    M.phi_t = t_power(cfg.q, cfg);
    M.label = "trivial";
    return M;
}

Series omega_factor(const ModulePresentation& M, long cap) {
    if (M.omega == Omega::dt) return derivative(M.phi_t, DerivMode::d_dt).truncated(cap);
    if (standard_lift(M)) return Series(Scalar(Rational(M.cfg.q)).bind(M.cfg));
    long n = cap == kExact ? std::max(M.phi_t.trunc() - M.phi_t.low(), 0L) : cap;
    if (n == kExact) n = 4 * M.cfg.q;
    Series num = derivative(M.phi_t, DerivMode::t_d_dt);
    return (num * inverse(M.phi_t, n)).truncated(n);
}

ValidationReport validate(const ModulePresentation& M, long tol_order) {
    ValidationReport r;
    const FieldConfig& f = M.cfg;
    try {
        f.check();
        r.checks.push_back("field");
    } catch (const Error& e) {
        r.fail(e.what());
        return r;
    }
    if (M.A.rows() != M.rank || M.A.cols() != M.rank || M.G.rows() != M.rank || M.G.cols() != M.rank) {
        r.fail("matrix shape does not match rank " + std::to_string(M.rank));
        return r;
    }
    try {
        check_frobenius_lift(M.phi_t, f.q);
        r.checks.push_back("frobenius_lift");
    } catch (const Error& e) {
        r.fail(e.what());
    }
    long low = kExact;
    for (Eigen::Index i = 0; i < M.rank; ++i)
        for (Eigen::Index j = 0; j < M.rank; ++j) low = std::min(low, M.A(i, j).low());
    if (low < 0) {
        r.fail("A has negative powers of t");
    } else if (rank(coeff_matrix(M.A, 0)) < M.rank) {
        r.fail("A(0) is singular, so A is not invertible over K[[t]]_0");
    } else {
        r.checks.push_back("A_invertible");
    }
    if (M.omega == Omega::dt_over_t) {
        if (is_nilpotent(coeff_matrix(M.G, 0)))
            r.checks.push_back("nilpotent_residue");
        else
            r.fail("G(0) is not nilpotent");
    }
    if (!r.pass) return r;

    const DerivMode dm = M.omega == Omega::dt ? DerivMode::d_dt : DerivMode::t_d_dt;
    Mat<Series> lhs = add(map_entries(M.A, [dm](const Series& s) { return derivative(s, dm); }), mul(M.G, M.A));
    long n = tol_order >= 0 ? tol_order : kExact;
    n = std::min(n, min_trunc(lhs));
    Mat<Series> phiG = map_entries(M.G, [&](const Series& s) { return frobenius_substitute(s, M.phi_t, f.q, n); });
    Series fac = omega_factor(M, n);
    Mat<Series> rhs = scale(mul(M.A, phiG), fac);
    n = std::min(n, min_trunc(rhs));
    long bad = kExact;
    std::string where;
    for (Eigen::Index i = 0; i < M.rank; ++i)
        for (Eigen::Index j = 0; j < M.rank; ++j) {
            Series d = (lhs(i, j) - rhs(i, j)).truncated(n);
            if (!d.is_zero() && d.low() < bad) {
                bad = d.low();
                where = pos(i, j);
            }
        }
    r.order = n == kExact ? -1 : n;
    if (bad != kExact)
        r.fail("compatibility d(A) + G A = (phi(omega)/omega) A phi(G) fails at t^" + std::to_string(bad) +
               " in entry " + where);
    else
        r.checks.push_back("compatibility");

    if (M.generic_G) {
        bool ok = true;
        for (Eigen::Index i = 0; i < M.rank && ok; ++i)
            for (Eigen::Index j = 0; j < M.rank && ok; ++j) {
                const RatFunc& g = (*M.generic_G)(i, j);
                if (!g.is_polynomial()) continue;
                Series s = M.omega == Omega::dt ? g.num() : g.num().shifted(1);
                long deg = s.is_zero() ? 0 : s.high();
                if (!s.agrees_through(M.G(i, j), std::min(deg, M.G(i, j).trunc()))) {
                    ok = false;
                    r.fail("generic G disagrees with the special G in entry " + pos(i, j));
                }
            }
        if (ok) r.checks.push_back("generic_window");
    }
    return r;
}

ModulePresentation dual(const ModulePresentation& M) {
    ModulePresentation D = M;
    D.label = "dual(" + M.label + ")";
    const int n = M.rank;
    Mat<Series> inv;
    if (all_exact(M.A)) {
        Series d = det(M.A);
        if (d.is_zero()) throw Error(ErrorCode::SingularA, "det A = 0");
        if (d.size() == 1) {
            const auto& [e, c] = *d.terms().begin();
            inv = scale(adjugate(M.A), Series::monomial(c.inverse(), -e));
        }
    }
    if (inv.size() == 0) {
        long trunc = std::min(min_trunc(M.A), min_trunc(M.G));
        if (trunc == kExact) trunc = 2 * M.cfg.p * M.cfg.p * M.cfg.p * M.cfg.p;
        inv = inverse(M.A, trunc);
    }
    D.A = transposed(inv);
    D.G = scale(transposed(M.G), Scalar(-1));
    (void)n;
    if (M.generic_A || M.generic_G) {
        auto g = generic_parts(M);
        if (g) {
            D.generic_G = scale(transposed(g->G), RatFunc(-1));
            if (g->A)
                D.generic_A = transposed(inverse(*g->A));
            else
                D.generic_A.reset();
        }
    }
    return D;
}

static void check_same_form(const ModulePresentation& M, const ModulePresentation& N) {
    if (M.omega != N.omega) throw Error(ErrorCode::FormMismatch, "different forms omega");
    if (!(M.cfg == N.cfg)) throw Error(ErrorCode::FormMismatch, "different field configurations");
    if (M.phi_t != N.phi_t) throw Error(ErrorCode::FormMismatch, "different Frobenius lifts");
}

ModulePresentation tensor(const ModulePresentation& M, const ModulePresentation& N) {
    check_same_form(M, N);
    ModulePresentation T = M;
    T.rank = M.rank * N.rank;
    T.label = "tensor(" + M.label + "," + N.label + ")";
    T.A = kron(M.A, N.A);
    Series one(Scalar(1).bind(M.cfg));
    T.G = add(kron(M.G, eye<Series>(N.rank, one)), kron(eye<Series>(M.rank, one), N.G));
    T.generic_A.reset();
    T.generic_G.reset();
    if (M.generic_G || N.generic_G) {
        auto a = generic_parts(M), b = generic_parts(N);
        if (a && b) {
            RatFunc r1(Scalar(1).bind(M.cfg));
            T.generic_G = add(kron(a->G, eye<RatFunc>(N.rank, r1)), kron(eye<RatFunc>(M.rank, r1), b->G));
            if (a->A && b->A) T.generic_A = kron(*a->A, *b->A);
        }
    }
    return T;
}

ModulePresentation direct_sum(const ModulePresentation& M, const ModulePresentation& N) {
    check_same_form(M, N);
    ModulePresentation S = M;
    S.rank = M.rank + N.rank;
    S.label = "direct_sum(" + M.label + "," + N.label + ")";
    S.A = block_diag(M.A, N.A);
    S.G = block_diag(M.G, N.G);
    S.generic_A.reset();
    S.generic_G.reset();
    if (M.generic_G || N.generic_G) {
        auto a = generic_parts(M), b = generic_parts(N);
        if (a && b) {
            S.generic_G = block_diag(a->G, b->G);
            if (a->A && b->A) S.generic_A = block_diag(*a->A, *b->A);
        }
    }
    return S;
}

ModulePresentation twist(const ModulePresentation& M, const Scalar& c) {
    if (c.is_zero()) throw Error(ErrorCode::ZeroTwist, "twist by 0");
    ModulePresentation T = M;
    T.label = "twist(" + M.label + "," + c.str() + ")";
    T.A = scale(M.A, c);
    if (T.generic_A) T.generic_A = scale(*T.generic_A, RatFunc(c));
    return T;
}

ModulePresentation pushforward(const ModulePresentation& M, int a) {
    if (a < 1) throw Error(ErrorCode::InvalidField, "pushforward needs a >= 1");
    if (a == 1) return M;
    ModulePresentation P = M;
    P.label = "pushforward(" + M.label + "," + std::to_string(a) + ")";
    const long cap = min_trunc(M.A);
    const long q = M.cfg.q;
    Mat<Series> phiA = M.A;
    Mat<Series> prod = M.A;
    Series phi_pow = M.phi_t;  // phi^j(t)
    for (int j = 1; j < a; ++j) {
        phiA = map_entries(phiA, [&](const Series& s) { return frobenius_substitute(s, M.phi_t, q, cap); });
        prod = truncated(mul(prod, phiA), cap);
        phi_pow = frobenius_substitute(phi_pow, M.phi_t, q);
    }
    P.A = prod;
    P.phi_t = phi_pow;
    long qa = 1;
    for (int j = 0; j < a; ++j) qa *= q;
    P.cfg.q = qa;
    if (M.generic_A && standard_lift(M)) {
        Mat<RatFunc> pr = *M.generic_A, cur = *M.generic_A;
        for (int j = 1; j < a; ++j) {
            cur = map_entries(cur, [q](const RatFunc& x) { return frobenius_substitute(x, q); });
            pr = mul(pr, cur);
        }
        P.generic_A = pr;
    } else {
        P.generic_A.reset();
    }
    return P;
}

ModulePresentation change_basis(const ModulePresentation& M, const Mat<Scalar>& P) {
    Mat<Scalar> Pi = inverse(P);
    auto lift = [](const Mat<Scalar>& m) { return map_entries(m, [](const Scalar& c) { return Series(c); }); };
    ModulePresentation R = M;
    R.A = mul(mul(lift(Pi), M.A), lift(P));
    R.G = mul(mul(lift(Pi), M.G), lift(P));
    auto liftr = [](const Mat<Scalar>& m) { return map_entries(m, [](const Scalar& c) { return RatFunc(c); }); };
    if (R.generic_A) R.generic_A = mul(mul(liftr(Pi), *M.generic_A), liftr(P));
    if (R.generic_G) R.generic_G = mul(mul(liftr(Pi), *M.generic_G), liftr(P));
    return R;
}

GenericPresentation to_generic(const ModulePresentation& M) {
    GenericPresentation g;
    g.rank = M.rank;
    g.cfg = M.cfg;
    g.A_series = M.A;
    if (M.generic_G) {
        g.G = *M.generic_G;
    } else {
        if (!all_exact(M.G))
            throw Error(ErrorCode::NonPolynomialEntry,
                        "G has truncated entries; supply exact generic data for " + M.label);
        Mat<Series> G = M.omega == Omega::dt ? M.G : map_entries(M.G, [](const Series& s) { return s.shifted(-1); });
        g.G = to_ratfunc(G);
    }
    if (M.generic_A)
        g.A = *M.generic_A;
    else if (all_exact(M.A))
        g.A = to_ratfunc(M.A);
    auto bind_all = [&](const RatFunc& f) { return f.bind(M.cfg); };
    g.G = map_entries(g.G, bind_all);
    if (g.A) g.A = map_entries(*g.A, bind_all);
    return g;
}

GenericPresentation dual(const GenericPresentation& M) {
    GenericPresentation D = M;
    D.G = scale(transposed(M.G), RatFunc(-1));
    if (M.A) D.A = transposed(inverse(*M.A));
    long trunc = min_trunc(M.A_series);
    if (trunc == kExact) trunc = 2 * M.cfg.p * M.cfg.p * M.cfg.p * M.cfg.p;
    D.A_series = transposed(inverse(M.A_series, trunc));
    return D;
}

GenericPresentation tensor(const GenericPresentation& M, const GenericPresentation& N) {
    if (!(M.cfg == N.cfg)) throw Error(ErrorCode::FormMismatch, "different field configurations");
    GenericPresentation T;
    T.rank = M.rank * N.rank;
    T.cfg = M.cfg;
    RatFunc one(Scalar(1).bind(M.cfg));
    T.G = add(kron(M.G, eye<RatFunc>(N.rank, one)), kron(eye<RatFunc>(M.rank, one), N.G));
    if (M.A && N.A) T.A = kron(*M.A, *N.A);
    T.A_series = truncated(kron(M.A_series, N.A_series), std::min(min_trunc(M.A_series), min_trunc(N.A_series)));
    return T;
}

namespace {

template <typename T>
Mat<T> sub_block(const Mat<T>& a, int lo, int hi) {
    return a.block(lo, lo, hi - lo, hi - lo);
}

void check_block(int n, int lo, int hi) {
    if (lo < 0 || hi > n || lo >= hi) throw Error(ErrorCode::FormMismatch, "block out of range");
}

}  // namespace

ModulePresentation block(const ModulePresentation& M, int lo, int hi) {
    check_block(M.rank, lo, hi);
    ModulePresentation B = M;
    B.rank = hi - lo;
    B.A = sub_block(M.A, lo, hi);
    B.G = sub_block(M.G, lo, hi);
    if (M.generic_A) B.generic_A = sub_block(*M.generic_A, lo, hi);
    if (M.generic_G) B.generic_G = sub_block(*M.generic_G, lo, hi);
    return B;
}

ModulePresentation sym2(const ModulePresentation& M) {
    const int n = M.rank, r = n * (n + 1) / 2;
    const Scalar one = Scalar(1).bind(M.cfg);
    Mat<Scalar> P = zeros<Scalar>(n * n, n * n);
    int col = 0;
    // symmetric tensors first, then e_i e_j - e_j e_i
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++col) {
            P(i * n + j, col) = one;
            P(j * n + i, col) = one;
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++col) {
            P(i * n + j, col) = one;
            P(j * n + i, col) = -one;
        }
    ModulePresentation S = block(change_basis(tensor(M, M), P), 0, r);
    S.label = "sym2(" + M.label + ")";
    return S;
}

GenericPresentation block(const GenericPresentation& M, int lo, int hi) {
    check_block(M.rank, lo, hi);
    GenericPresentation B = M;
    B.rank = hi - lo;
    B.G = sub_block(M.G, lo, hi);
    if (M.A) B.A = sub_block(*M.A, lo, hi);
    B.A_series = sub_block(M.A_series, lo, hi);
    return B;
}

std::vector<int> stable_prefixes(const GenericPresentation& M) {
    std::vector<int> out;
    for (int r = 1; r < M.rank; ++r) {
        bool ok = true;
        for (int i = r; i < M.rank && ok; ++i)
            for (int j = 0; j < r && ok; ++j) {
                bool a_zero = M.A ? (*M.A)(i, j).is_zero() : M.A_series(i, j).is_exact_zero();
                ok = a_zero && M.G(i, j).is_zero();
            }
        if (ok) out.push_back(r);
    }
    return out;
}

}  // namespace lgf
