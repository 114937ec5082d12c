#include "lgf/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lgf {

long sat_add(long a, long b) {
    if (a == kExact || b == kExact) return kExact;
    return a + b;
}

// ---------------------------------------------------------------- Series

Series::Series(int c) : Series(Scalar(c)) {}

Series::Series(const Scalar& c) {
    if (!c.is_zero()) t_.emplace(0, c);
}

Series Series::monomial(const Scalar& c, long e, long trunc) {
    Series s;
    s.n_ = trunc;
    if (!c.is_zero() && e <= trunc) s.t_.emplace(e, c);
    return s;
}

Series Series::unknown(long trunc) {
    Series s;
    s.n_ = trunc;
    return s;
}

long Series::low() const {
    if (t_.empty()) return n_ == kExact ? kExact : n_ + 1;
    return t_.begin()->first;
}

long Series::high() const {
    if (t_.empty()) return std::numeric_limits<long>::min();
    return t_.rbegin()->first;
}

Scalar Series::coeff(long e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Scalar(0) : it->second;
}

void Series::set(long e, const Scalar& c) {
    if (e > n_) return;
    if (c.is_zero())
        t_.erase(e);
    else
        t_[e] = c;
}

void Series::add_to(long e, const Scalar& c) {
    if (e > n_ || c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Series Series::truncated(long n) const {
    if (n >= n_) return *this;
    Series s;
    s.n_ = n;
    for (auto it = t_.begin(); it != t_.end() && it->first <= n; ++it) s.t_.insert(*it);
    return s;
}

Series Series::polynomial_part() const {
    Series s = *this;
    s.n_ = kExact;
    return s;
}

Series Series::shifted(long k) const {
    Series s;
    s.n_ = sat_add(n_, k);
    for (const auto& [e, c] : t_) s.t_.emplace_hint(s.t_.end(), e + k, c);
    return s;
}

Series Series::bind(const FieldConfig& f) const {
    Series s = *this;
    for (auto& [e, c] : s.t_) c = c.bind(f);
    return s;
}

Series Series::operator-() const {
    Series s = *this;
    for (auto& [e, c] : s.t_) c = -c;
    return s;
}

Series& Series::operator+=(const Series& o) {
    long n = std::min(n_, o.n_);
    if (n < n_) *this = truncated(n);
    for (auto it = o.t_.begin(); it != o.t_.end() && it->first <= n; ++it) add_to(it->first, it->second);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    long n = std::min(n_, o.n_);
    if (n < n_) *this = truncated(n);
    for (auto it = o.t_.begin(); it != o.t_.end() && it->first <= n; ++it) add_to(it->first, -it->second);
    return *this;
}

Series& Series::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        *this = Series();
        return *this;
    }
    for (auto& [e, x] : t_) x *= c;
    return *this;
}

Series& Series::operator*=(const Series& o) {
    *this = *this * o;
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return Series();
    const long la = a.low(), lb = b.low();
    const long n = std::min(sat_add(a.trunc(), lb), sat_add(b.trunc(), la));
    Series r = Series::unknown(n);
    if (a.is_zero() || b.is_zero()) return r;
    if (b.size() == 1 && b.terms().begin()->second.is_rational()) {
        // cheap path for monomial multipliers
        Series s = a.shifted(b.terms().begin()->first) * b.terms().begin()->second;
        return s.truncated(n);
    }
    const long lo = la + lb;
    const long hi = std::min(n, a.high() + b.high());
    if (hi < lo) return r;
    const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
    const long range = hi - lo + 1;
    Scalar prod;
    if (range <= 8'000'000 && static_cast<double>(range) <= 4.0 * pairs + 64) {
        std::vector<Scalar> buf(static_cast<size_t>(range));
        for (const auto& [i, x] : a.terms()) {
            if (i + lb > hi) break;
            for (const auto& [j, y] : b.terms()) {
                if (i + j > hi) break;
                prod = x;
                prod *= y;
                buf[static_cast<size_t>(i + j - lo)] += prod;
            }
        }
        for (long k = 0; k < range; ++k)
            if (!buf[static_cast<size_t>(k)].is_zero()) r.set(lo + k, buf[static_cast<size_t>(k)]);
    } else {
        std::map<long, Scalar> acc;
        for (const auto& [i, x] : a.terms()) {
            if (i + lb > hi) break;
            for (const auto& [j, y] : b.terms()) {
                if (i + j > hi) break;
                prod = x;
                prod *= y;
                acc[i + j] += prod;
            }
        }
        for (const auto& [e, c] : acc)
            if (!c.is_zero()) r.set(e, c);
    }
    return r;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }
Series operator*(Series a, const Scalar& c) { return a *= c; }
Series operator*(const Scalar& c, Series a) { return a *= c; }

bool Series::operator==(const Series& o) const {
    if (n_ != o.n_ || t_.size() != o.t_.size()) return false;
    auto it = o.t_.begin();
    for (const auto& [e, c] : t_) {
        if (it->first != e || it->second != c) return false;
        ++it;
    }
    return true;
}

bool Series::agrees_through(const Series& o, long n) const {
    Series d = truncated(n) - o.truncated(n);
    return d.is_zero();
}

std::string Series::str(size_t max_terms) const {
    std::ostringstream os;
    size_t k = 0;
    for (const auto& [e, c] : t_) {
        if (k++ == max_terms) {
            os << " + ...";
            break;
        }
        if (k > 1) os << " + ";
        os << "[" << c.str() << "]";
        if (e != 0) os << " t^" << e;
    }
    if (t_.empty()) os << "0";
    if (n_ != kExact) os << " + O(t^" << n_ + 1 << ")";
    return os.str();
}

Series inverse(const Series& f, long trunc) {
    if (f.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of a series with no known nonzero term");
    const long l = f.low();
    const Scalar u0 = f.coeff(l);
    const Scalar inv0 = u0.inverse();
    long n = trunc;
    if (!f.exact()) n = std::min(n, f.trunc() - 2 * l);
    if (n == kExact) throw Error(ErrorCode::NonPolynomialEntry, "exact inverse of a series needs a truncation order");
    // h = 1/u with u = f / (u0 t^l); h_k = -inv0 * sum_{j>=1} u_j h_{k-j}
    const long len = n + l + 1;  // number of h coefficients
    std::vector<Scalar> h(static_cast<size_t>(std::max(len, 0L)));
    std::vector<std::pair<long, Scalar>> u;
    for (const auto& [e, c] : f.terms())
        if (e > l) u.emplace_back(e - l, c);
    for (long k = 0; k < len; ++k) {
        if (k == 0) {
            h[0] = inv0;
            continue;
        }
        Scalar s;
        for (const auto& [j, c] : u) {
            if (j > k) break;
            if (!h[static_cast<size_t>(k - j)].is_zero()) s += c * h[static_cast<size_t>(k - j)];
        }
        h[static_cast<size_t>(k)] = -(s * inv0);
    }
    Series r = Series::unknown(n);
    for (long k = 0; k < len; ++k) r.set(k - l, h[static_cast<size_t>(k)]);
    return r;
}

// ---------------------------------------------------------------- LogSeries

LogSeries::LogSeries(int c) : LogSeries(Series(c)) {}
LogSeries::LogSeries(const Scalar& c) : LogSeries(Series(c)) {}
LogSeries::LogSeries(const Series& s) {
    parts_.push_back(s);
    trim();
}

LogSeries LogSeries::log_power(int n, const Scalar& one) {
    LogSeries r;
    r.parts_.assign(static_cast<size_t>(n) + 1, Series());
    r.parts_[static_cast<size_t>(n)] = Series(one);
    return r;
}

const Series& LogSeries::part(size_t n) const {
    static const Series zero;
    return n < parts_.size() ? parts_[n] : zero;
}

bool LogSeries::is_zero() const {
    for (const auto& s : parts_)
        if (!s.is_zero()) return false;
    return true;
}

bool LogSeries::is_exact_zero() const { return parts_.empty(); }

long LogSeries::trunc() const {
    long n = kExact;
    for (const auto& s : parts_) n = std::min(n, s.trunc());
    return n;
}

void LogSeries::set_part(size_t n, const Series& s) {
    if (parts_.size() <= n) parts_.resize(n + 1);
    parts_[n] = s;
    trim();
}

void LogSeries::trim() {
    while (!parts_.empty() && parts_.back().is_exact_zero()) parts_.pop_back();
}

LogSeries LogSeries::operator-() const {
    LogSeries r = *this;
    for (auto& s : r.parts_) s = -s;
    return r;
}

LogSeries& LogSeries::operator+=(const LogSeries& o) {
    if (parts_.size() < o.parts_.size()) parts_.resize(o.parts_.size());
    for (size_t n = 0; n < o.parts_.size(); ++n) parts_[n] += o.parts_[n];
    trim();
    return *this;
}

LogSeries& LogSeries::operator-=(const LogSeries& o) {
    if (parts_.size() < o.parts_.size()) parts_.resize(o.parts_.size());
    for (size_t n = 0; n < o.parts_.size(); ++n) parts_[n] -= o.parts_[n];
    trim();
    return *this;
}

LogSeries& LogSeries::operator*=(const LogSeries& o) {
    if (parts_.empty() || o.parts_.empty()) {
        parts_.clear();
        return *this;
    }
    std::vector<Series> r(parts_.size() + o.parts_.size() - 1);
    for (size_t i = 0; i < parts_.size(); ++i)
        for (size_t j = 0; j < o.parts_.size(); ++j) r[i + j] += parts_[i] * o.parts_[j];
    parts_ = std::move(r);
    trim();
    return *this;
}

LogSeries& LogSeries::operator*=(const Scalar& c) {
    for (auto& s : parts_) s *= c;
    trim();
    return *this;
}

LogSeries LogSeries::truncated(long n) const {
    LogSeries r = *this;
    for (auto& s : r.parts_) s = s.truncated(n);
    return r;
}

std::string LogSeries::str() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    for (size_t n = 0; n < parts_.size(); ++n) {
        if (n) os << " + ";
        os << "(" << parts_[n].str() << ")";
        if (n) os << " L^" << n;
    }
    return os.str();
}

LogSeries operator+(LogSeries a, const LogSeries& b) { return a += b; }
LogSeries operator-(LogSeries a, const LogSeries& b) { return a -= b; }
LogSeries operator*(LogSeries a, const LogSeries& b) { return a *= b; }
LogSeries operator*(LogSeries a, const Scalar& c) { return a *= c; }

// ---------------------------------------------------------------- calculus

Series derivative(const Series& f, DerivMode mode, long floor) {
    Series r = Series::unknown(mode == DerivMode::d_dt ? sat_add(f.trunc(), -1) : f.trunc());
    for (const auto& [e, c] : f.terms()) {
        if (e == 0) continue;
        long ne = mode == DerivMode::d_dt ? e - 1 : e;
        if (ne < floor)
            throw Error(ErrorCode::NegativeExponentOverflow, "derivative would reach t^" + std::to_string(ne));
        Scalar x = c;
        x *= Rational(e);
        r.set(ne, x);
    }
    return r;
}

LogSeries derivative(const LogSeries& f, DerivMode mode, long floor) {
    LogSeries r;
    const auto& parts = f.parts();
    for (size_t n = 0; n < parts.size(); ++n) {
        LogSeries term(derivative(parts[n], mode, floor));
        LogSeries shifted;
        if (n > 0) {
            Series g = parts[n] * Scalar(Rational(static_cast<long>(n)));
            if (mode == DerivMode::d_dt) {
                if (!g.is_zero() && g.low() - 1 < floor)
                    throw Error(ErrorCode::NegativeExponentOverflow, "log derivative below floor");
                g = g.shifted(-1);
            }
            shifted.set_part(n - 1, g);
        }
        LogSeries up;
        if (!term.is_exact_zero()) up.set_part(n, term.part(0));
        r += up;
        r += shifted;
    }
    return r;
}

Series integrate(const Series& f) {
    Series r = Series::unknown(sat_add(f.trunc(), 1));
    for (const auto& [e, c] : f.terms()) {
        if (e == -1) throw Error(ErrorCode::ResidueObstruction, "t^-1 term has no antiderivative");
        Scalar x = c;
        x *= Rational(1, 1) / Rational(e + 1);
        r.set(e + 1, x);
    }
    return r;
}

static bool is_plain_power(const Series& phi, long q) {
    return phi.exact() && phi.size() == 1 && phi.terms().begin()->first == q &&
           phi.terms().begin()->second == Scalar(1);
}

void check_frobenius_lift(const Series& phi_t, long q) {
    if (is_plain_power(phi_t, q)) return;
    Series d = phi_t - Series::monomial(Scalar(1), q);
    for (const auto& [e, c] : d.terms()) {
        Valuation v = c.valuation();
        if (v && *v <= 0)
            throw Error(ErrorCode::NotAFrobeniusLift, "|phi(t) - t^q|_0 >= 1 (coefficient of t^" + std::to_string(e) + ")");
    }
    if (phi_t.low() < 1) throw Error(ErrorCode::NotAFrobeniusLift, "phi(t) must vanish at t = 0");
}

Series frobenius_substitute(const Series& f, const Series& phi_t, long q, long cap) {
    if (is_plain_power(phi_t, q)) {
        Series r = Series::unknown(f.exact() ? kExact : q * (f.trunc() + 1) - 1);
        for (const auto& [e, c] : f.terms()) r.set(e * q, c);
        return r.truncated(cap);
    }
    check_frobenius_lift(phi_t, q);
    if (!f.is_zero() && f.low() < 0)
        throw Error(ErrorCode::NegativeExponentOverflow, "Laurent substitution needs phi(t) = t^q");
    const long lphi = phi_t.low();
    long target = cap;
    if (!f.exact()) target = std::min(target, (f.trunc() + 1) * lphi - 1);
    if (!phi_t.exact() && !f.is_zero()) target = std::min(target, std::max(f.low() - 1, 0L) * lphi + phi_t.trunc());
    if (target == kExact && !f.exact()) target = f.trunc();
    Series r = Series::unknown(target);
    Series pw(1);
    long cur = 0;
    for (const auto& [e, c] : f.terms()) {
        if (e * lphi > target) break;
        while (cur < e) {
            pw = (pw * phi_t).truncated(target);
            ++cur;
        }
        r += (pw * c).truncated(target);
    }
    return r.truncated(target);
}

LogSeries frobenius_substitute(const LogSeries& f, const Series& phi_t, long q, long cap) {
    LogSeries r;
    const auto& parts = f.parts();
    if (parts.size() <= 1) {
        if (parts.empty()) return r;
        return LogSeries(frobenius_substitute(parts[0], phi_t, q, cap));
    }
    // phi(L) = ell + q L with ell = log(phi(t)/t^q)
    Scalar one(1);
    LogSeries phiL;
    Series ell;
    if (!is_plain_power(phi_t, q)) {
        check_frobenius_lift(phi_t, q);
        if (phi_t.low() != q || phi_t.coeff(q) != Scalar(1))
            throw Error(ErrorCode::NotAFrobeniusLift, "log substitution needs phi(t) = t^q (1 + z) with z(0) = 0");
        Series z = phi_t.shifted(-q) - Series(1);
        long target = std::min(cap, z.exact() ? cap : z.trunc());
        if (target == kExact) target = f.trunc();
        Series zp(1);
        for (long n = 1; n <= target; ++n) {
            zp = (zp * z).truncated(target);
            if (zp.is_zero()) break;
            Scalar c(Rational(n % 2 == 1 ? 1 : -1, 1) / Rational(n));
            ell += zp * c;
        }
        ell = ell.truncated(target);
    }
    phiL.set_part(0, ell);
    phiL.set_part(1, Series(Scalar(Rational(q))));
    LogSeries pw(1);
    for (size_t n = 0; n < parts.size(); ++n) {
        if (n > 0) pw *= phiL;
        LogSeries term(frobenius_substitute(parts[n], phi_t, q, cap));
        r += (term * pw).truncated(cap);
    }
    return r;
}

Rational gauss_norm(const Series& f, const Rational& rho) {
    if (f.is_zero()) throw Error(ErrorCode::EmptySeries, "Gauss norm of a series with no known nonzero term");
    bool first = true;
    Rational best;
    for (const auto& [e, c] : f.terms()) {
        Rational v = *c.valuation() + rho * Rational(e);
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

Valuation gauss_valuation(const Series& f) {
    if (f.is_zero()) return std::nullopt;
    return gauss_norm(f, 0);
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(int c) : num_(c) {}
RatFunc::RatFunc(const Scalar& c) : num_(c) {}
RatFunc::RatFunc(const Series& num) : num_(num) {
    if (!num.exact()) throw Error(ErrorCode::NonPolynomialEntry, "truncated series is not a rational function");
}
RatFunc::RatFunc(const Series& num, const Series& den) : num_(num), den_(den) {
    if (!num.exact() || !den.exact())
        throw Error(ErrorCode::NonPolynomialEntry, "truncated series is not a rational function");
    if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    normalize();
}

namespace {

// Dense coefficients of t^{-low} f, lowest degree first.
std::vector<Scalar> dense(const Series& f) {
    const long lo = f.low();
    std::vector<Scalar> c(static_cast<size_t>(f.high() - lo + 1));
    for (const auto& [e, v] : f.terms()) c[static_cast<size_t>(e - lo)] = v;
    return c;
}

Series from_dense(const std::vector<Scalar>& c) {
    Series f;
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) f.set(static_cast<long>(i), c[i]);
    return f;
}

void trim(std::vector<Scalar>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// a mod b, with b nonzero and trimmed.
std::vector<Scalar> poly_mod(std::vector<Scalar> a, const std::vector<Scalar>& b) {
    const Scalar lead_inv = b.back().inverse();
    while (a.size() >= b.size()) {
        const Scalar f = a.back() * lead_inv;
        const size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

// Exact quotient a / b.
std::vector<Scalar> poly_div(std::vector<Scalar> a, const std::vector<Scalar>& b) {
    const Scalar lead_inv = b.back().inverse();
    std::vector<Scalar> q(a.size() - b.size() + 1);
    while (a.size() >= b.size()) {
        const Scalar f = a.back() * lead_inv;
        const size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
    }
    return q;
}

}  // namespace

// Cancels the polynomial gcd and scales the denominator to constant term 1.
void RatFunc::normalize() {
    if (num_.is_zero()) {
        num_ = Series();
        den_ = Series(1);
        return;
    }
    const long shift = num_.low() - den_.low();
    std::vector<Scalar> n = dense(num_), d = dense(den_);
    if (d.size() > 1 && n.size() > 1) {
        std::vector<Scalar> a = n, b = d;
        while (!b.empty()) {
            a = poly_mod(std::move(a), b);
            std::swap(a, b);
        }
        if (a.size() > 1) {
            n = poly_div(n, a);
            d = poly_div(d, a);
        }
    }
    const Scalar c = d.front().inverse();
    for (auto& x : n) x *= c;
    for (auto& x : d) x *= c;
    num_ = from_dense(n).shifted(shift);
    den_ = from_dense(d);
}

RatFunc RatFunc::bind(const FieldConfig& f) const {
    RatFunc r = *this;
    r.num_ = num_.bind(f);
    r.den_ = den_.bind(f);
    return r;
}

bool RatFunc::is_polynomial() const { return den_.size() == 1 && den_.terms().begin()->first == 0; }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    num_ = num_ * o.num_;
    if (!o.is_polynomial()) den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero rational function");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

bool RatFunc::operator==(const RatFunc& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    return num_ * o.den_ == o.num_ * den_;
}

std::string RatFunc::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

RatFunc derivative(const RatFunc& f) {
    Series dn = derivative(f.num(), DerivMode::d_dt);
    if (f.is_polynomial()) return RatFunc(dn);
    Series dd = derivative(f.den(), DerivMode::d_dt);
    return RatFunc(dn * f.den() - f.num() * dd, f.den() * f.den());
}

Valuation gauss_valuation(const RatFunc& f) {
    if (f.is_zero()) return std::nullopt;
    if (f.is_polynomial()) return gauss_valuation(f.num());
    return Rational(*gauss_valuation(f.num()) - *gauss_valuation(f.den()));
}

RatFunc frobenius_substitute(const RatFunc& f, long q) {
    Series phi = Series::monomial(Scalar(1), q);
    Series n = frobenius_substitute(f.num(), phi, q);
    if (f.is_polynomial()) return RatFunc(n);
    return RatFunc(n, frobenius_substitute(f.den(), phi, q));
}

// ---------------------------------------------------------------- growth

std::string GrowthEstimate::str() const {
    if (minus_infinity) return "-inf";
    if (lower == upper) return rat_str(upper) + (snapped ? "" : "?");
    return "[" + rat_str(lower) + ", " + rat_str(upper) + "]";
}

Rational snap_rational(double x, long D) {
    Rational best;
    double err = 1e300;
    for (long d = 1; d <= D; ++d) {
        double n = std::round(x * static_cast<double>(d));
        double e = std::fabs(x - n / static_cast<double>(d));
        if (e < err - 1e-15) {
            err = e;
            best = Rational(static_cast<long>(n), d);
            best.canonicalize();
        }
    }
    return best;
}

GrowthEstimate growth_from_points(const std::vector<std::pair<long, Rational>>& pts, long p,
                                  const GrowthOptions& opt, long lo, long hi) {
    GrowthEstimate g;
    if (pts.empty()) {
        g.exact = g.snapped = true;
        return g;
    }
    // Block maxima: M_r = max -v(a_i) over i in [p^r, p^{r+1}), placed at x = r + 1.
    // |a_i| = O(i^lambda) iff M_r <= lambda r + C, and clustered or shifted supports
    // land in one block instead of producing steep short segments.
    struct P {
        Rational x, y;
        long index;
    };
    auto block_of = [p](long i) {
        long r = 0;
        for (long b = p; b <= i; b *= p) ++r;
        return r;
    };
    long first_full = std::numeric_limits<long>::min(), last_full = std::numeric_limits<long>::max();
    if (lo >= 1 && hi >= lo) {
        // block r is complete when lo <= p^r and p^{r+1} - 1 <= hi
        long rlo = block_of(lo), rhi = block_of(hi);
        long start = 1;
        for (long k = 0; k < rlo; ++k) start *= p;
        long end = start * p;
        for (long k = rlo; k < rhi; ++k) end *= p;
        first_full = start == lo ? rlo : rlo + 1;
        last_full = end - 1 == hi ? rhi : rhi - 1;
        if (last_full - first_full + 1 < 2) {
            first_full = std::numeric_limits<long>::min();
            last_full = std::numeric_limits<long>::max();
        }
    }
    std::vector<P> all;
    for (const auto& [i, v] : pts) {
        const Rational x(block_of(i) + 1), y = -v;
        if (!all.empty() && all.back().x == x) {
            if (y > all.back().y) all.back() = {x, y, i};
        } else {
            all.push_back({x, y, i});
        }
    }
    std::vector<P> blocks;
    for (const P& b : all)
        if (b.x - 1 >= first_full && b.x - 1 <= last_full) blocks.push_back(b);
    if (blocks.empty()) blocks = all;
    std::vector<P> hull;  // upper hull
    for (const P& pt : blocks) {
        while (hull.size() >= 2) {
            const P& a = hull[hull.size() - 2];
            const P& b = hull.back();
            if ((b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x) >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    // first highest vertex: a trailing plateau is a truncation artifact
    size_t peak = 0;
    for (size_t k = 0; k < hull.size(); ++k)
        if (hull[k].y > hull[peak].y) peak = k;
    g.peak_index = hull[peak].index;
    if (peak == 0) {
        // block maxima never rise above the first one: bounded
        g.exact = g.snapped = true;
        return g;
    }
    const P& top = hull[peak];
    const Rational last = (top.y - hull[peak - 1].y) / (top.x - hull[peak - 1].x);
    // chord from the vertex nearest the middle of the hull's x-range
    const Rational xmid = (hull[0].x + top.x) / 2;
    size_t mid = 0;
    for (size_t k = 0; k < peak; ++k)
        if (abs(hull[k].x - xmid) < abs(hull[mid].x - xmid)) mid = k;
    const Rational chord = (top.y - hull[mid].y) / (top.x - hull[mid].x);
    const Rational lower = std::max(std::min(last, chord), Rational(0));
    const Rational upper = std::max(std::max(last, chord), Rational(0));
    const Rational r = snap_rational(upper.get_d(), opt.snap_denominator);
    if (upper - lower <= opt.tol && abs(upper - r) <= opt.tol) {
        g.lower = g.upper = r;
        g.snapped = true;
        g.exact = lower == upper && upper == r;
    } else {
        g.lower = lower;
        g.upper = upper;
    }
    return g;
}

GrowthEstimate measure_log_growth(const Series& f, long p, const GrowthOptions& opt) {
    GrowthEstimate g;
    if (f.is_zero()) {
        if (f.exact()) {
            g.minus_infinity = g.exact = g.snapped = true;
            return g;
        }
        throw Error(ErrorCode::InsufficientSupport, "series has no known nonzero coefficient");
    }
    if (f.exact()) {
        // a Laurent polynomial is bounded
        g.exact = g.snapped = true;
        return g;
    }
    long hi = opt.window_hi >= 0 ? std::min(opt.window_hi, f.trunc()) : f.trunc();
    if (hi < opt.window_lo)
        throw Error(ErrorCode::InsufficientSupport,
                    "window [" + std::to_string(opt.window_lo) + ", " + std::to_string(hi) + "] is empty");
    std::vector<std::pair<long, Rational>> pts;
    for (auto it = f.terms().lower_bound(std::max(opt.window_lo, 1L)); it != f.terms().end() && it->first <= hi; ++it)
        pts.emplace_back(it->first, *it->second.valuation());
    return growth_from_points(pts, p, opt, std::max(opt.window_lo, 1L), hi);
}

GrowthEstimate measure_log_growth(const LogSeries& f, long p, const GrowthOptions& opt) {
    GrowthEstimate total;
    total.minus_infinity = true;
    total.exact = total.snapped = true;
    const auto& parts = f.parts();
    for (size_t n = 0; n < parts.size(); ++n) {
        if (parts[n].is_exact_zero()) continue;
        GrowthEstimate g = measure_log_growth(parts[n], p, opt);
        if (g.minus_infinity) continue;
        Rational lo = g.lower + Rational(static_cast<long>(n));
        Rational up = g.upper + Rational(static_cast<long>(n));
        if (total.minus_infinity || up > total.upper) {
            total.peak_index = g.peak_index;
            total.peak_log = static_cast<int>(n);
        }
        if (total.minus_infinity) {
            total.lower = lo;
            total.upper = up;
            total.minus_infinity = false;
        } else {
            total.lower = std::max(total.lower, lo);
            total.upper = std::max(total.upper, up);
        }
        total.exact = total.exact && g.exact;
        total.snapped = total.snapped && g.snapped;
    }
    return total;
}

GrowthEstimate exact_growth_via_eigenrelation(const LogSeries& f, const Scalar& c, int d, const Series& phi_t,
                                              const FieldConfig& cfg, const GrowthOptions& opt) {
    if (f.is_zero()) throw Error(ErrorCode::RelationNotSatisfied, "zero series");
    const long window = f.trunc();
    LogSeries g = f;
    for (int k = 0; k < d; ++k) g = frobenius_substitute(g, phi_t, cfg.q, window);
    LogSeries diff = (g - f * c).truncated(window);
    if (!diff.is_zero()) {
        GrowthEstimate gd = measure_log_growth(diff, cfg.p, opt);
        GrowthEstimate gf = measure_log_growth(f, cfg.p, opt);
        if (!gd.minus_infinity && !(gd.upper < gf.lower))
            throw Error(ErrorCode::RelationNotSatisfied, "phi^d(f) - c f does not have smaller growth");
    }
    Valuation v = c.valuation();
    if (!v) throw Error(ErrorCode::RelationNotSatisfied, "c = 0");
    GrowthEstimate r;
    r.lower = r.upper = *v / Rational(static_cast<long>(d) * cfg.log_q());
    if (r.upper < 0) throw Error(ErrorCode::RelationNotSatisfied, "negative eigen-slope");
    r.exact = r.snapped = true;
    return r;
}

// ---------------------------------------------------------------- generators

static long int_exponent(const Rational& e, const char* what) {
    if (e.get_den() != 1) throw Error(ErrorCode::IllegalExponent, std::string(what) + " is not a power of pi");
    return e.get_num().get_si();
}

Scalar q_power(const Rational& e, const FieldConfig& f) {
    Rational k = e * Rational(static_cast<long>(f.m) * f.log_q());
    return Scalar::pi_power(int_exponent(k, "q^e"), f);
}

Scalar p_power(const Rational& e, const FieldConfig& f) {
    Rational k = e * Rational(static_cast<long>(f.m));
    return Scalar::pi_power(int_exponent(k, "p^e"), f);
}

Series xmu(const Rational& mu, const FieldConfig& f, long depth) {
    Series s = Series::unknown(depth);
    Scalar step = q_power(-mu, f);
    Scalar c = Scalar(1).bind(f);
    for (long e = 1; e <= depth; e *= f.q) {
        s.set(e, c);
        c *= step;
        if (e > depth / f.q) break;
    }
    return s;
}

Series gmu(const Rational& mu, const FieldConfig& f, long depth) {
    Series s = Series::unknown(depth);
    Scalar step = q_power(1 - mu, f);
    Scalar c = Scalar(1).bind(f);
    for (long e = 1; e - 1 <= depth; e *= f.q) {
        s.set(e - 1, c);
        c *= step;
        if (e > (depth + 1) / f.q) break;
    }
    return s;
}

Series bessel_b(const FieldConfig& f, long depth) {
    Series s = Series::unknown(depth);
    Rational inv_fact2 = 1;
    for (long i = 0; i <= depth; ++i) {
        if (i > 0) inv_fact2 /= Rational(i * i);
        s.set(i, Scalar::pi_power(2 * i, f, inv_fact2));
    }
    return s;
}

Series bessel_c(const FieldConfig& f, long depth) {
    Series s = Series::unknown(depth);
    Rational inv_fact2 = 1, h = 0;
    for (long i = 1; i <= depth; ++i) {
        inv_fact2 /= Rational(i * i);
        h += Rational(1, 1) / Rational(i);
        s.set(i, Scalar::pi_power(2 * i, f, -2 * h * inv_fact2));
    }
    return s.bind(f);
}

Series bessel_u(int sign, const FieldConfig& f, long depth) {
    Series s = Series::unknown(depth);
    Rational c = 1;  // ((2i-1)!!)^2 / (8^i i!)
    for (long i = 0; i <= depth; ++i) {
        if (i > 0) {
            c *= Rational((2 * i - 1) * (2 * i - 1));
            c /= Rational(8 * i);
            if (sign < 0) c = -c;
        }
        s.set(i, Scalar::pi_power(-i, f, c));
    }
    return s;
}

}  // namespace lgf
