#include "lgf/analysis.hpp"

#include <algorithm>
#include <numeric>

namespace lgf {

// ---------------------------------------------------------------- polygons

NewtonPolygon newton_polygon(Multiset ms) {
    if (ms.empty()) throw Error(ErrorCode::WidthMismatch, "empty slope multiset");
    std::sort(ms.begin(), ms.end());
    NewtonPolygon np;
    np.slopes = ms;
    np.vertices.emplace_back(Rational(0), Rational(0));
    Rational y = 0;
    for (size_t i = 0; i < ms.size(); ++i) {
        y += ms[i];
        if (i + 1 == ms.size() || ms[i + 1] != ms[i]) np.vertices.emplace_back(Rational(static_cast<long>(i + 1)), y);
    }
    return np;
}

Rational NewtonPolygon::height(long x) const {
    Rational y = 0;
    for (long i = 0; i < x; ++i) y += slopes[static_cast<size_t>(i)];
    return y;
}

const char* np_relation_name(NpRelation r) {
    switch (r) {
        case NpRelation::above_same_endpoints: return "above_same_endpoints";
        case NpRelation::equal: return "equal";
        case NpRelation::crossing: return "crossing";
        case NpRelation::endpoint_mismatch: return "endpoint_mismatch";
    }
    return "?";
}

NpRelation np_compare(const NewtonPolygon& a, const NewtonPolygon& b) {
    if (a.width() != b.width())
        throw Error(ErrorCode::WidthMismatch,
                    "widths " + std::to_string(a.width()) + " and " + std::to_string(b.width()));
    const long n = a.width();
    if (a.height(n) != b.height(n)) return NpRelation::endpoint_mismatch;
    bool above = false;
    for (long x = 1; x < n; ++x) {
        Rational d = a.height(x) - b.height(x);
        if (d < 0) return NpRelation::crossing;
        if (d > 0) above = true;
    }
    return above ? NpRelation::above_same_endpoints : NpRelation::equal;
}

bool gap_check(const NewtonPolygon& np) {
    for (size_t i = 1; i < np.slopes.size(); ++i)
        if (np.slopes[i] - np.slopes[i - 1] > 1) return false;
    return true;
}

// ---------------------------------------------------------------- filtrations

const char* filtration_kind_name(FiltrationKind k) {
    switch (k) {
        case FiltrationKind::growth_special: return "growth_special";
        case FiltrationKind::growth_generic: return "growth_generic";
        case FiltrationKind::frobenius_special: return "frobenius_special";
        case FiltrationKind::frobenius_generic: return "frobenius_generic";
    }
    return "?";
}

int FiltrationReport::dim_at(const Rational& lambda) const {
    int d = 0;
    for (const auto& s : slopes)
        if (s <= lambda) ++d;
    return d;
}

FiltrationReport filtration_from_multiset(FiltrationKind kind, Multiset ms) {
    std::sort(ms.begin(), ms.end());
    FiltrationReport r;
    r.kind = kind;
    r.rank = static_cast<int>(ms.size());
    r.slopes = ms;
    for (size_t i = 0; i < ms.size(); ++i)
        if (i + 1 == ms.size() || ms[i + 1] != ms[i]) {
            r.breakpoints.push_back(ms[i]);
            r.dims.push_back(static_cast<int>(i + 1));
        }
    return r;
}

Rational b_nabla(const FiltrationReport& r) {
    if (r.breakpoints.empty()) throw Error(ErrorCode::WidthMismatch, "empty filtration");
    return r.breakpoints.back();
}

// ---------------------------------------------------------------- Frobenius slopes

Multiset frobenius_slopes_special(const Mat<Scalar>& C, const FieldConfig& cfg) {
    const long n = C.rows();
    std::vector<Scalar> c = char_poly(C);
    if (c[0].is_zero()) throw Error(ErrorCode::SingularMatrix, "C is singular");
    std::vector<std::pair<long, Rational>> pts;
    for (long i = 0; i <= n; ++i)
        if (!c[static_cast<size_t>(i)].is_zero()) pts.emplace_back(i, *c[static_cast<size_t>(i)].bind(cfg).valuation());
    // lower hull
    std::vector<std::pair<long, Rational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            Rational cross = Rational(b.first - a.first) * (pt.second - a.second) -
                             (b.second - a.second) * Rational(pt.first - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    Multiset out;
    const Rational a = cfg.log_q();
    for (size_t k = 1; k < hull.size(); ++k) {
        const long w = hull[k].first - hull[k - 1].first;
        Rational s = (hull[k].second - hull[k - 1].second) / Rational(w);
        for (long j = 0; j < w; ++j) out.push_back(-s / a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

Rational min_gauss(const Mat<RatFunc>& B) {
    std::optional<Rational> w;
    for (Eigen::Index i = 0; i < B.rows(); ++i)
        for (Eigen::Index j = 0; j < B.cols(); ++j) {
            Valuation v = gauss_valuation(B(i, j));
            if (v && (!w || *v < *w)) w = *v;
        }
    if (!w) throw Error(ErrorCode::SingularA, "zero matrix in Frobenius iteration");
    return *w;
}

// D^-1 E D with D = diag(pi^e_i) chosen by difference constraints so that every entry
// has valuation at least the minimum cycle mean of the valuation graph (up to 1/m).
// phi fixes D, so slopes are unchanged; it removes transients from large off-diagonal
// entries that would otherwise look like a stable rate.
Mat<RatFunc> balanced(const Mat<RatFunc>& E, const FieldConfig& cfg) {
    const int n = static_cast<int>(E.rows());
    using Opt = std::optional<Rational>;
    std::vector<std::vector<Opt>> W(static_cast<size_t>(n), std::vector<Opt>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) W[i][j] = gauss_valuation(E(i, j));
    // Karp: D[k][v] is the least weight of a k-edge walk ending at v
    std::vector<std::vector<Opt>> D(static_cast<size_t>(n) + 1, std::vector<Opt>(static_cast<size_t>(n)));
    for (int v = 0; v < n; ++v) D[0][v] = Rational(0);
    for (int k = 1; k <= n; ++k)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (D[k - 1][u] && W[u][v] && (!D[k][v] || *D[k - 1][u] + *W[u][v] < *D[k][v]))
                    D[k][v] = *D[k - 1][u] + *W[u][v];
    Opt lambda;
    for (int v = 0; v < n; ++v) {
        if (!D[n][v]) continue;
        Opt worst;
        for (int k = 0; k < n; ++k)
            if (D[k][v]) {
                const Rational r = (*D[n][v] - *D[k][v]) / Rational(n - k);
                if (!worst || r > *worst) worst = r;
            }
        if (worst && (!lambda || *worst < *lambda)) lambda = worst;
    }
    if (!lambda) return E;
    // d_i - d_j <= W_ij - lambda, by Bellman-Ford from a virtual source
    std::vector<Rational> d(static_cast<size_t>(n), Rational(0));
    for (int round = 0; round < n; ++round)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (W[i][j] && d[j] + *W[i][j] - *lambda < d[i]) d[i] = d[j] + *W[i][j] - *lambda;
    Mat<RatFunc> out = E;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!W[i][j]) continue;
            const Integer ei = floor_q(d[i] * cfg.m), ej = floor_q(d[j] * cfg.m);
            const long shift = Integer(ej - ei).get_si();
            if (shift != 0) out(i, j) *= RatFunc(Scalar::pi_power(shift, cfg));
        }
    return out;
}

// Eventually periodic increments: (w_j - w_{j-d}) / d constant on three consecutive j.
std::optional<Rational> stable_rate(const std::vector<Rational>& w, int max_period) {
    const int J = static_cast<int>(w.size());
    for (int d = 1; d <= max_period; ++d) {
        if (J < d + 3) break;
        Rational r = (w[J - 1] - w[J - 1 - d]) / Rational(d);
        bool ok = true;
        for (int j = J - 2; j >= J - 3; --j)
            if ((w[j] - w[j - d]) / Rational(d) != r) ok = false;
        if (ok) return r;
    }
    return std::nullopt;
}

}  // namespace

GenericSlopeResult frobenius_slopes_generic(const Mat<RatFunc>& A0, const FieldConfig& cfg, int iters) {
    const Mat<RatFunc> A = map_entries(A0, [&](const RatFunc& f) { return f.bind(cfg); });
    const int n = static_cast<int>(A.rows());
    const Rational a = cfg.log_q();
    GenericSlopeResult res;
    std::vector<Rational> s(static_cast<size_t>(n) + 1, Rational(0));
    for (int k = 1; k <= n; ++k) {
        Mat<RatFunc> E = balanced(exterior_power(A, k), cfg);
        Mat<RatFunc> B = E, cur = E;
        std::vector<Rational> w{Rational(0), min_gauss(B)};
        std::optional<Rational> rate;
        int j = 1;
        while (!(rate = stable_rate(w, n))) {
            if (++j > iters) {
                Rational lo = w.back() / Rational(j - 1), hi = lo;
                for (size_t i = 1; i < w.size(); ++i) {
                    lo = std::min<Rational>(lo, w[i] / Rational(static_cast<long>(i)));
                    hi = std::max<Rational>(hi, w[i] / Rational(static_cast<long>(i)));
                }
                throw Error(ErrorCode::NonConvergent, "s_" + std::to_string(k) + " in [" + rat_str(lo / a) + ", " +
                                                          rat_str(hi / a) + "] after " + std::to_string(iters) +
                                                          " iterations");
            }
            cur = map_entries(cur, [&](const RatFunc& f) { return frobenius_substitute(f, cfg.q); });
            B = mul(B, cur);
            w.push_back(min_gauss(B));
        }
        res.iterations = std::max(res.iterations, j);
        s[static_cast<size_t>(k)] = *rate / a;
    }
    Valuation vd = gauss_valuation(det(A));
    if (!vd || *vd / a != s[static_cast<size_t>(n)])
        throw Error(ErrorCode::NonConvergent, "sum of slopes disagrees with det A");
    for (int k = 1; k <= n; ++k) {
        Rational lam = s[static_cast<size_t>(k)] - s[static_cast<size_t>(k - 1)];
        if (!res.slopes.empty() && lam < res.slopes.back())
            throw Error(ErrorCode::NonConvergent, "partial sums are not convex");
        res.slopes.push_back(lam);
    }
    res.partial_sums.assign(s.begin() + 1, s.end());
    return res;
}

GenericSlopeResult frobenius_slopes_generic(const GenericPresentation& M, int iters) {
    if (M.A) return frobenius_slopes_generic(*M.A, M.cfg, iters);
    // rank two: unit reduction of A / pi^{m v_min} with vanishing reduced det
    if (M.rank != 2) throw Error(ErrorCode::NonConvergent, "no exact A and rank is not 2");
    std::optional<Rational> vmin;
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j) {
            Valuation v = gauss_valuation(M.A_series(i, j));
            if (v && (!vmin || *v < *vmin)) vmin = *v;
        }
    Valuation S = gauss_valuation(det(M.A_series));
    if (!vmin || !S) throw Error(ErrorCode::SingularA, "A vanishes on its known window");
    Valuation vt = (M.A_series(0, 0).coeff(0) + M.A_series(1, 1).coeff(0)).valuation();
    if (!vt || *vt != *vmin) throw Error(ErrorCode::NonConvergent, "reduced trace at t = 0 is not a unit");
    if (*S - 2 * *vmin <= 0) throw Error(ErrorCode::NonConvergent, "reduced determinant does not vanish");
    const Rational a = M.cfg.log_q();
    GenericSlopeResult res;
    res.slopes = {*vmin / a, (*S - *vmin) / a};
    res.partial_sums = {res.slopes[0], *S / a};
    res.via_invariants = true;
    return res;
}

// ---------------------------------------------------------------- growth rows

namespace {

bool bigger(const GrowthEstimate& a, const GrowthEstimate& b) {
    if (a.minus_infinity) return false;
    if (b.minus_infinity) return true;
    if (a.upper != b.upper) return a.upper > b.upper;
    return a.lower > b.lower;
}

bool less_growth(const GrowthEstimate& a, const GrowthEstimate& b) { return bigger(b, a); }

std::vector<size_t> growth_order(const std::vector<GrowthEstimate>& g) {
    std::vector<size_t> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return less_growth(g[x], g[y]); });
    return order;
}

}  // namespace

GrowthEstimate row_growth(const std::vector<LogSeries>& row, long p, const GrowthOptions& opt, int* peak_col) {
    GrowthEstimate best;
    best.minus_infinity = best.exact = best.snapped = true;
    int col = -1;
    for (size_t j = 0; j < row.size(); ++j) {
        if (row[j].is_zero()) continue;
        GrowthEstimate g = measure_log_growth(row[j], p, opt);
        bool ex = best.exact && g.exact, sn = best.snapped && g.snapped;
        if (col < 0 || bigger(g, best)) {
            best = g;
            col = static_cast<int>(j);
        }
        best.exact = ex;
        best.snapped = sn;
    }
    if (peak_col) *peak_col = col;
    return best;
}

namespace {

GrowthEstimate column_growth(const Mat<RatFunc>& row, Eigen::Index j, long p, const GrowthOptions& opt) {
    GrowthEstimate g;
    const long depth = row.rows() - 1;
    const long lo = std::max(opt.window_lo, 1L);
    const long hi = opt.window_hi >= 0 ? std::min(opt.window_hi, depth) : depth;
    bool any = false;
    for (long k = 0; k <= depth && !any; ++k) any = !row(k, j).is_zero();
    if (!any) {
        g.minus_infinity = g.exact = g.snapped = true;
        return g;
    }
    if (hi < lo)
        throw Error(ErrorCode::InsufficientSupport,
                    "generic window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
    std::vector<std::pair<long, Rational>> pts;
    for (long k = lo; k <= hi; ++k)
        if (!row(k, j).is_zero()) pts.emplace_back(k, *gauss_valuation(row(k, j)));
    return growth_from_points(pts, p, opt, lo, hi);
}

}  // namespace

GrowthEstimate row_growth(const Mat<RatFunc>& row, long p, const GrowthOptions& opt, int* peak_col) {
    GrowthEstimate best;
    best.minus_infinity = best.exact = best.snapped = true;
    int col = -1;
    for (Eigen::Index j = 0; j < row.cols(); ++j) {
        GrowthEstimate g = column_growth(row, j, p, opt);
        if (g.minus_infinity) continue;
        bool ex = best.exact && g.exact, sn = best.snapped && g.snapped;
        if (col < 0 || bigger(g, best)) {
            best = g;
            col = static_cast<int>(j);
        }
        best.exact = ex;
        best.snapped = sn;
    }
    if (peak_col) *peak_col = col;
    return best;
}

namespace {

// The multiple that cancels the peak must not create larger coefficients on the
// upper half (in log scale) of the window; otherwise the drop is a truncation artifact.
bool shrinks(const Series& before, const Series& after, long peak, long lo) {
    for (const auto& [k, c] : before.terms()) {
        if (k < lo || k > peak || k * k < peak) continue;
        const Scalar d = after.coeff(k);
        if (!d.is_zero() && *d.valuation() < *c.valuation()) return false;
    }
    return true;
}

}  // namespace

SpecialBasis reduce_special(const SolutionPackage& S, long p, const ReductionOptions& opt) {
    SpecialBasis B;
    const Eigen::Index n = S.Y.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        std::vector<LogSeries> r;
        for (Eigen::Index j = 0; j < n; ++j) r.push_back(S.Y(i, j));
        B.rows.push_back(std::move(r));
    }
    for (const auto& r : B.rows) B.growth.push_back(row_growth(r, p, opt.growth));
    for (int pass = 0; pass < opt.max_passes; ++pass) {
        bool improved = false;
        std::vector<size_t> order = growth_order(B.growth);
        for (size_t pr = 0; pr < order.size() && !improved; ++pr) {
            const size_t r = order[pr];
            int col = -1;
            GrowthEstimate g = row_growth(B.rows[r], p, opt.growth, &col);
            if (g.minus_infinity || g.upper <= 0 || g.peak_index < 0 || col < 0) continue;
            const Scalar cr = B.rows[r][static_cast<size_t>(col)].part(static_cast<size_t>(g.peak_log)).coeff(g.peak_index);
            if (cr.is_zero()) continue;
            for (size_t ps = 0; ps < order.size() && !improved; ++ps) {
                const size_t s = order[ps];
                if (s == r || bigger(B.growth[s], g)) continue;
                const Scalar cs =
                    B.rows[s][static_cast<size_t>(col)].part(static_cast<size_t>(g.peak_log)).coeff(g.peak_index);
                if (cs.is_zero()) continue;
                const Scalar c = cr / cs;
                std::vector<LogSeries> cand = B.rows[r];
                for (size_t j = 0; j < cand.size(); ++j) cand[j] -= B.rows[s][j] * c;
                if (!shrinks(B.rows[r][static_cast<size_t>(col)].part(static_cast<size_t>(g.peak_log)),
                             cand[static_cast<size_t>(col)].part(static_cast<size_t>(g.peak_log)), g.peak_index,
                             opt.growth.window_lo))
                    continue;
                GrowthEstimate gc = row_growth(cand, p, opt.growth);
                if (gc.upper < g.upper && !gc.minus_infinity) {
                    B.rows[r] = std::move(cand);
                    B.growth[r] = gc;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return B;
}

namespace {

bool log_free(const std::vector<LogSeries>& row) {
    for (const auto& f : row)
        if (f.log_degree() > 0) return false;
    return true;
}

bool constant_row(const std::vector<LogSeries>& row) {
    for (const auto& f : row)
        if (!f.is_zero() && (f.part(0).low() != 0 || f.part(0).high() != 0)) return false;
    return true;
}

void transport(GenericBasis& B, const SpecialBasis& S, long n) {
    Mat<Scalar> chosen(0, n);
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (size_t i = 0; i < S.rows.size(); ++i) {
        const GrowthEstimate& g = S.growth[i];
        if (g.minus_infinity || !g.snapped || g.upper != 0) continue;
        if (!log_free(S.rows[i]) || constant_row(S.rows[i])) continue;
        Mat<Scalar> v(1, n);
        for (long j = 0; j < n; ++j) v(0, j) = S.rows[i][static_cast<size_t>(j)].part(0).coeff(0);
        Mat<Scalar> next(chosen.rows() + 1, n);
        next.topRows(chosen.rows()) = chosen;
        next.row(chosen.rows()) = v.row(0);
        if (rank(next) != next.rows()) continue;
        long r = -1;
        for (long j = 0; j < n; ++j) {
            if (used[static_cast<size_t>(j)] || v(0, j).is_zero() || B.growth[static_cast<size_t>(j)].upper <= 0) continue;
            if (r < 0 || bigger(B.growth[static_cast<size_t>(j)], B.growth[static_cast<size_t>(r)])) r = j;
        }
        if (r < 0) continue;
        chosen = next;
        used[static_cast<size_t>(r)] = true;
        B.rows[static_cast<size_t>(r)] = Mat<RatFunc>();
        B.transported[static_cast<size_t>(r)] = true;
        GrowthEstimate zero;
        zero.exact = zero.snapped = true;
        B.growth[static_cast<size_t>(r)] = zero;
    }
}

}  // namespace

GenericBasis reduce_generic(const GenericExpansion& E, long p, const ReductionOptions& opt, const SpecialBasis* special) {
    GenericBasis B;
    const Eigen::Index n = E.U[0].rows();
    const Eigen::Index depth = static_cast<Eigen::Index>(E.U.size()) - 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        Mat<RatFunc> r = zeros<RatFunc>(depth + 1, n);
        for (Eigen::Index k = 0; k <= depth; ++k)
            for (Eigen::Index j = 0; j < n; ++j) r(k, j) = E.U[static_cast<size_t>(k)](i, j);
        B.rows.push_back(std::move(r));
    }
    for (const auto& r : B.rows) B.growth.push_back(row_growth(r, p, opt.growth));
    B.transported.assign(B.rows.size(), false);
    if (special) transport(B, *special, n);
    for (int pass = 0; pass < opt.max_passes; ++pass) {
        bool improved = false;
        std::vector<size_t> order = growth_order(B.growth);
        for (size_t pr = 0; pr < order.size() && !improved; ++pr) {
            const size_t r = order[pr];
            if (B.transported[r]) continue;
            int col = -1;
            GrowthEstimate g = row_growth(B.rows[r], p, opt.growth, &col);
            if (g.minus_infinity || g.upper <= 0 || g.peak_index < 0 || col < 0) continue;
            const RatFunc cr = B.rows[r](g.peak_index, col);
            if (cr.is_zero()) continue;
            for (size_t ps = 0; ps < order.size() && !improved; ++ps) {
                const size_t s = order[ps];
                if (s == r || B.transported[s] || bigger(B.growth[s], g)) continue;
                const RatFunc cs = B.rows[s](g.peak_index, col);
                if (cs.is_zero()) continue;
                RatFunc ratio = cr / cs;
                Mat<RatFunc> cand;
                if (ratio.is_polynomial() && ratio.num().size() == 1 && ratio.num().low() == 0)
                    cand = sub(B.rows[r], scale(B.rows[s], ratio));
                else
                    cand = sub(scale(B.rows[r], cs), scale(B.rows[s], cr));
                // a single cancelled coefficient only flattens the hull; the peak column must vanish
                bool cleared = true;
                for (Eigen::Index k = 1; k < cand.rows() && cleared; ++k) cleared = cand(k, col).is_zero();
                if (!cleared) continue;
                GrowthEstimate gc = row_growth(cand, p, opt.growth);
                if (gc.upper < g.upper && !gc.minus_infinity) {
                    B.rows[r] = std::move(cand);
                    B.growth[r] = gc;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return B;
}

namespace {

FiltrationReport from_rows(FiltrationKind kind, const std::vector<GrowthEstimate>& rows) {
    Multiset ms;
    std::string bad;
    for (size_t i = 0; i < rows.size(); ++i) {
        const GrowthEstimate& g = rows[i];
        if (g.minus_infinity)
            throw Error(ErrorCode::UnstableReduction, "row " + std::to_string(i + 1) + " vanished on the window");
        if (!g.snapped) bad += " row " + std::to_string(i + 1) + " in " + g.str();
        ms.push_back(g.upper);
    }
    if (!bad.empty()) throw Error(ErrorCode::UnstableReduction, std::string("growth did not snap:") + bad);
    FiltrationReport r = filtration_from_multiset(kind, ms);
    r.rows = rows;
    return r;
}

}  // namespace

FiltrationReport growth_filtration(const SpecialBasis& B, FiltrationKind kind) { return from_rows(kind, B.growth); }

FiltrationReport growth_filtration(const GenericBasis& B) {
    return from_rows(FiltrationKind::growth_generic, B.growth);
}

ModuleFiltration module_filtration(const FiltrationReport& g) {
    ModuleFiltration m;
    m.breakpoints = g.breakpoints;
    for (int d : g.dims) m.dims.push_back(g.rank - d);
    m.slopes = g.slopes;
    return m;
}

// ---------------------------------------------------------------- PBQ

PbqVerdict pbq_test(const GenericPresentation& M, const GenericBasis& B, const Rational& lambda_max, int iters) {
    PbqVerdict v;
    v.lambda_max_generic = lambda_max;
    std::vector<size_t> W;
    for (size_t i = 0; i < B.rows.size(); ++i)
        if (!B.growth[i].minus_infinity && B.growth[i].upper <= 0) W.push_back(i);
    const int d = static_cast<int>(W.size());
    const int n = M.rank;
    v.bounded_solution_dim = d;
    if (d == 0) {
        v.is_pbq = v.multiset_computed = true;
        return v;
    }
    bool series_rows = false;
    for (size_t i : W) series_rows = series_rows || B.transported[i];
    if (!M.A || series_rows) {
        if (d > 1)
            throw Error(ErrorCode::NonConvergent, "bounded part has rank > 1 and has no exact rational basis");
        v.is_pbq = true;
        return v;
    }
    Mat<RatFunc> Wm(d, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) Wm(i, j) = B.rows[W[static_cast<size_t>(i)]](0, j);
    Mat<RatFunc> V = mul(map_entries(Wm, [&](const RatFunc& f) { return frobenius_substitute(f, M.cfg.q); }),
                         inverse(*M.A));
    // d independent columns of W
    std::vector<int> cols;
    std::vector<bool> pick(static_cast<size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + d, true);
    do {
        std::vector<int> c;
        for (int j = 0; j < n; ++j)
            if (pick[static_cast<size_t>(j)]) c.push_back(j);
        Mat<RatFunc> sub_w(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sub_w(i, j) = Wm(i, c[static_cast<size_t>(j)]);
        if (rank(sub_w) == d) {
            cols = c;
            break;
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (cols.empty()) throw Error(ErrorCode::SubspaceNotStable, "bounded solutions are dependent at X = t");
    Mat<RatFunc> Ws(d, d), Vs(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Ws(i, j) = Wm(i, cols[static_cast<size_t>(j)]);
            Vs(i, j) = V(i, cols[static_cast<size_t>(j)]);
        }
    Mat<RatFunc> Bm = mul(Vs, inverse(Ws));
    Mat<RatFunc> back = mul(Bm, Wm);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j)
            if (back(i, j) != V(i, j))
                throw Error(ErrorCode::SubspaceNotStable, "phi(W) is not contained in W");
    GenericSlopeResult s = frobenius_slopes_generic(transposed(Bm), M.cfg, iters);
    for (const auto& x : s.slopes) v.bounded_slope_multiset.push_back(-x);
    std::sort(v.bounded_slope_multiset.begin(), v.bounded_slope_multiset.end());
    v.multiset_computed = true;
    v.is_pbq = v.bounded_slope_multiset.front() == v.bounded_slope_multiset.back();
    return v;
}

// ---------------------------------------------------------------- CT comparison

std::string interval_str(const Interval& i) {
    return (i.lo ? "[" + rat_str(*i.lo) : std::string("(-inf")) + ", " + (i.hi ? rat_str(*i.hi) : "inf") + ")";
}

CtResult compare_ct(const FiltrationReport& growth_special, const Multiset& sol_frobenius, const Rational& lambda_max) {
    CtResult r;
    r.lambda_max = lambda_max;
    auto frob_dim = [&](const Rational& l) {
        int d = 0;
        for (const auto& s : sol_frobenius)
            if (s + lambda_max <= l) ++d;
        return d;
    };
    std::vector<Rational> bps = growth_special.breakpoints;
    for (const auto& s : sol_frobenius) bps.push_back(s + lambda_max);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<Rational> grid{bps.front() - 1};
    for (size_t i = 0; i < bps.size(); ++i) {
        grid.push_back(bps[i]);
        if (i + 1 < bps.size()) grid.push_back((bps[i] + bps[i + 1]) / 2);
    }
    grid.push_back(bps.back() + 1);
    for (const auto& l : grid) {
        int g = growth_special.dim_at(l), f = frob_dim(l);
        r.grid.push_back(l);
        r.growth_dims.push_back(g);
        r.frobenius_dims.push_back(f);
        if (f > g) r.containment = false;
        if (f != g) r.equality = false;
    }
    // strict locus on the step intervals
    auto strict_at = [&](const Rational& l) { return frob_dim(l) != growth_special.dim_at(l); };
    std::vector<Interval> steps;
    steps.push_back({std::nullopt, bps.front()});
    for (size_t i = 0; i < bps.size(); ++i)
        steps.push_back({bps[i], i + 1 < bps.size() ? std::optional<Rational>(bps[i + 1]) : std::nullopt});
    for (size_t i = 0; i < steps.size(); ++i) {
        Rational rep = i == 0 ? bps.front() - 1 : *steps[i].lo;
        if (!strict_at(rep)) continue;
        if (!r.strict_locus.empty() && r.strict_locus.back().hi && steps[i].lo &&
            *r.strict_locus.back().hi == *steps[i].lo)
            r.strict_locus.back().hi = steps[i].hi;
        else
            r.strict_locus.push_back(steps[i]);
    }
    return r;
}

}  // namespace lgf
