#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lgf/field.hpp"

namespace lgf {

/// Truncation order meaning "no unknown tail".
constexpr long kExact = std::numeric_limits<long>::max();

long sat_add(long a, long b);

/// Laurent series over K with coefficients known for exponents <= trunc().
/// Coefficients past trunc() are unknown, not zero.
class Series {
public:
    Series() = default;
    Series(int c);  // NOLINT: exact constant, lets Eigen write Series(0)
    Series(const Scalar& c);
    static Series monomial(const Scalar& c, long e, long trunc = kExact);
    /// O(t^{trunc+1}).
    static Series unknown(long trunc);

    const std::map<long, Scalar>& terms() const { return t_; }
    long trunc() const { return n_; }
    bool exact() const { return n_ == kExact; }
    bool is_zero() const { return t_.empty(); }
    bool is_exact_zero() const { return t_.empty() && n_ == kExact; }
    /// Lowest nonzero exponent, or trunc()+1 when nothing is known to be nonzero.
    long low() const;
    long high() const;
    Scalar coeff(long e) const;
    size_t size() const { return t_.size(); }

    void set(long e, const Scalar& c);
    void add_to(long e, const Scalar& c);
    Series truncated(long n) const;
    /// Drops unknown-tail bookkeeping: the known part as an exact polynomial.
    Series polynomial_part() const;
    Series shifted(long k) const;  // multiply by t^k
    Series bind(const FieldConfig& f) const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o);
    Series& operator*=(const Scalar& c);

    /// Same known terms and truncation.
    bool operator==(const Series& o) const;
    bool operator!=(const Series& o) const { return !(*this == o); }
    /// Agreement of coefficients through exponent n.
    bool agrees_through(const Series& o, long n) const;

    std::string str(size_t max_terms = 12) const;

private:
    std::map<long, Scalar> t_;
    long n_ = kExact;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(Series a, const Scalar& c);
Series operator*(const Scalar& c, Series a);

/// Multiplicative inverse of a series with invertible lowest coefficient.
Series inverse(const Series& f, long trunc);

enum class DerivMode { d_dt, t_d_dt };

/// Polynomial in L = log t with series coefficients.
class LogSeries {
public:
    LogSeries() = default;
    LogSeries(int c);  // NOLINT
    LogSeries(const Series& s);  // NOLINT
    LogSeries(const Scalar& c);  // NOLINT
    static LogSeries log_power(int n, const Scalar& one);

    const std::vector<Series>& parts() const { return parts_; }
    const Series& part(size_t n) const;
    int log_degree() const { return static_cast<int>(parts_.size()) - 1; }
    bool is_zero() const;
    bool is_exact_zero() const;
    long trunc() const;
    void set_part(size_t n, const Series& s);

    LogSeries operator-() const;
    LogSeries& operator+=(const LogSeries& o);
    LogSeries& operator-=(const LogSeries& o);
    LogSeries& operator*=(const LogSeries& o);
    LogSeries& operator*=(const Scalar& c);
    bool operator==(const LogSeries& o) const { return parts_ == o.parts_; }
    bool operator!=(const LogSeries& o) const { return !(*this == o); }
    LogSeries truncated(long n) const;

    std::string str() const;

private:
    std::vector<Series> parts_;
    void trim();
};

LogSeries operator+(LogSeries a, const LogSeries& b);
LogSeries operator-(LogSeries a, const LogSeries& b);
LogSeries operator*(LogSeries a, const LogSeries& b);
LogSeries operator*(LogSeries a, const Scalar& c);

/// d/dt or t d/dt. d/dt below exponent `floor` raises NegativeExponentOverflow.
Series derivative(const Series& f, DerivMode mode, long floor = std::numeric_limits<long>::min());
LogSeries derivative(const LogSeries& f, DerivMode mode, long floor = std::numeric_limits<long>::min());

Series integrate(const Series& f);

/// t <- phi_t, L <- log(phi_t / t^q) + q L. Result is cut at `cap` if given.
Series frobenius_substitute(const Series& f, const Series& phi_t, long q, long cap = kExact);
LogSeries frobenius_substitute(const LogSeries& f, const Series& phi_t, long q, long cap = kExact);
/// Checks |phi_t - t^q|_0 < 1 and the t-adic shape the substitution needs.
void check_frobenius_lift(const Series& phi_t, long q);

/// min_i v(a_i) + rho * i over the known terms (-log_p of |f|_rho).
Rational gauss_norm(const Series& f, const Rational& rho);
Valuation gauss_valuation(const Series& f);

/// Rational function num/den over K (generic-fiber coefficient).
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(int c);  // NOLINT
    RatFunc(const Scalar& c);  // NOLINT
    RatFunc(const Series& num);  // NOLINT: exact Laurent polynomial
    RatFunc(const Series& num, const Series& den);

    const Series& num() const { return num_; }
    const Series& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const;  // den is 1 after normalization
    RatFunc bind(const FieldConfig& f) const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    std::string str() const;

private:
    Series num_ = Series(0);
    Series den_ = Series(1);
    void normalize();
};

RatFunc operator+(RatFunc a, const RatFunc& b);
RatFunc operator-(RatFunc a, const RatFunc& b);
RatFunc operator*(RatFunc a, const RatFunc& b);
RatFunc operator/(RatFunc a, const RatFunc& b);
RatFunc derivative(const RatFunc& f);
/// v_0(num) - v_0(den); nullopt for 0.
Valuation gauss_valuation(const RatFunc& f);
/// t <- t^q on a rational function.
RatFunc frobenius_substitute(const RatFunc& f, long q);

struct GrowthEstimate {
    Rational lower;
    Rational upper;
    bool exact = false;
    bool snapped = false;
    bool minus_infinity = false;  // zero series
    // Position of the hull peak that fixes the estimate: data index and L-power.
    long peak_index = -1;
    int peak_log = 0;
    std::string str() const;
};

struct GrowthOptions {
    long window_lo = 16;
    long window_hi = -1;  // -1: up to the truncation order
    long snap_denominator = 24;
    Rational tol = Rational(1, 50);
};

/// Growth bracket from (index, valuation) samples; index >= 1. The hull runs over block
/// maxima of -v on [p^r, p^{r+1}); blocks only partly inside the covered range [lo, hi]
/// are dropped while two complete blocks remain (lo, hi < 0: no pruning).
GrowthEstimate growth_from_points(const std::vector<std::pair<long, Rational>>& pts, long p,
                                  const GrowthOptions& opt, long lo = -1, long hi = -1);
GrowthEstimate measure_log_growth(const Series& f, long p, const GrowthOptions& opt);
GrowthEstimate measure_log_growth(const LogSeries& f, long p, const GrowthOptions& opt);

/// Growth lambda = v(c) / (d log_p q) once phi^d(f) - c f is verified zero (or of
/// smaller measured growth) on the known window.
GrowthEstimate exact_growth_via_eigenrelation(const LogSeries& f, const Scalar& c, int d, const Series& phi_t,
                                              const FieldConfig& cfg, const GrowthOptions& opt);

/// Closest rational with denominator <= D.
Rational snap_rational(double x, long D);

// Built-in series generators.
/// q^e as a power of pi; IllegalExponent unless m * log_p(q) * e is an integer.
Scalar q_power(const Rational& e, const FieldConfig& f);
Scalar p_power(const Rational& e, const FieldConfig& f);
Series xmu(const Rational& mu, const FieldConfig& f, long depth);
Series gmu(const Rational& mu, const FieldConfig& f, long depth);
Series bessel_b(const FieldConfig& f, long depth);
Series bessel_c(const FieldConfig& f, long depth);
/// u_{+} (sign 1) or u_{-} (sign -1) of the Bessel module at infinity.
Series bessel_u(int sign, const FieldConfig& f, long depth);

}  // namespace lgf

namespace Eigen {
template <>
struct NumTraits<lgf::Series> : GenericNumTraits<lgf::Series> {
    using Real = lgf::Series;
    using NonInteger = lgf::Series;
    using Literal = lgf::Series;
    using Nested = lgf::Series;
    enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 10, AddCost = 50, MulCost = 200 };
};
template <>
struct NumTraits<lgf::LogSeries> : GenericNumTraits<lgf::LogSeries> {
    using Real = lgf::LogSeries;
    using NonInteger = lgf::LogSeries;
    using Literal = lgf::LogSeries;
    using Nested = lgf::LogSeries;
    enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 10, AddCost = 50, MulCost = 200 };
};
template <>
struct NumTraits<lgf::RatFunc> : GenericNumTraits<lgf::RatFunc> {
    using Real = lgf::RatFunc;
    using NonInteger = lgf::RatFunc;
    using Literal = lgf::RatFunc;
    using Nested = lgf::RatFunc;
    enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 10, AddCost = 50, MulCost = 200 };
};
}  // namespace Eigen
