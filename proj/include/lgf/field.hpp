#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "lgf/error.hpp"

namespace lgf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Valuation in (1/m)Z; nullopt stands for +infinity.
using Valuation = std::optional<Rational>;

struct FieldConfig {
    long p = 5;
    int m = 1;
    long q = 5;

    /// a with q = p^a.
    int log_q() const;
    void check() const;
    bool operator==(const FieldConfig&) const = default;
};

FieldConfig make_field(long p, int m, long q);

/// v_p of a nonzero rational.
long vp(const Rational& x, long p);
long vp(const Integer& x, long p);

/// Legendre: v_p(i!).
long factorial_valuation(long i, long p);

/// Element of K = Q[pi]/(pi^m - p). A scalar built from a plain number is
/// "unbound" (m_ == 0) and adopts the field of whatever it meets.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v);  // NOLINT: Eigen needs implicit construction from literals
    Scalar(long v);
    Scalar(const Rational& v);
    Scalar(const Rational& v, const FieldConfig& f);

    static Scalar pi(const FieldConfig& f);
    /// c * pi^k for any integer k (negative allowed).
    static Scalar pi_power(long k, const FieldConfig& f, const Rational& c = 1);

    bool is_zero() const { return c_.empty(); }
    bool bound() const { return m_ != 0; }
    long p() const { return p_; }
    int m() const { return m_; }
    FieldConfig field(long q) const;

    /// Coefficient of pi^j (0 <= j < m).
    Rational coeff(int j) const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_rational() const { return c_.size() <= 1; }
    /// Nonzero and of the form c * pi^j.
    bool is_monomial() const;

    Scalar bind(const FieldConfig& f) const;

    Valuation valuation() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar& operator*=(const Rational& r);

    Scalar inverse() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical text "c0 + (c1) pi + (c2) pi^2".
    std::string str() const;

private:
    std::vector<Rational> c_;
    long p_ = 0;
    int m_ = 0;

    void trim();
    void adopt(const Scalar& o);
};

inline Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
inline Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
inline Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
inline Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

Valuation valuation(const Scalar& x);

/// Norm |x| = p^{-v(x)} as a double, for display only.
double norm(const Scalar& x);

bool val_less(const Valuation& a, const Valuation& b);
Valuation val_min(const Valuation& a, const Valuation& b);
Valuation val_add(const Valuation& a, const Valuation& b);
std::string val_str(const Valuation& v);

/// Exact rational to text ("3", "-1/2").
std::string rat_str(const Rational& r);
Rational parse_rational(const std::string& s);

/// floor/ceil of a rational.
Integer floor_q(const Rational& r);
Integer ceil_q(const Rational& r);

}  // namespace lgf

namespace Eigen {
template <>
struct NumTraits<lgf::Scalar> : GenericNumTraits<lgf::Scalar> {
    using Real = lgf::Scalar;
    using NonInteger = lgf::Scalar;
    using Literal = lgf::Scalar;
    using Nested = lgf::Scalar;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 20,
        MulCost = 40
    };
};
}  // namespace Eigen
