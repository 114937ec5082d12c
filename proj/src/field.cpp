#include "lgf/field.hpp"

#include <cmath>
#include <sstream>

namespace lgf {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::InvalidField: return "InvalidField";
        case ErrorCode::NegativeExponentOverflow: return "NegativeExponentOverflow";
        case ErrorCode::ResidueObstruction: return "ResidueObstruction";
        case ErrorCode::NotAFrobeniusLift: return "NotAFrobeniusLift";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::InsufficientSupport: return "InsufficientSupport";
        case ErrorCode::RelationNotSatisfied: return "RelationNotSatisfied";
        case ErrorCode::SingularA: return "SingularA";
        case ErrorCode::FormMismatch: return "FormMismatch";
        case ErrorCode::ZeroTwist: return "ZeroTwist";
        case ErrorCode::NonPolynomialEntry: return "NonPolynomialEntry";
        case ErrorCode::NotNilpotentResidue: return "NotNilpotentResidue";
        case ErrorCode::FrobeniusMatrixNotConstant: return "FrobeniusMatrixNotConstant";
        case ErrorCode::DenominatorBlowup: return "DenominatorBlowup";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::NonConvergent: return "NonConvergent";
        case ErrorCode::UnstableReduction: return "UnstableReduction";
        case ErrorCode::SubspaceNotStable: return "SubspaceNotStable";
        case ErrorCode::WidthMismatch: return "WidthMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IllegalExponent: return "IllegalExponent";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::SchemaError: return "SchemaError";
    }
    return "Error";
}

static bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int FieldConfig::log_q() const {
    int a = 0;
    long r = q;
    while (r > 1 && r % p == 0) {
        r /= p;
        ++a;
    }
    return r == 1 ? a : -1;
}

void FieldConfig::check() const {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidField, "p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw Error(ErrorCode::InvalidField, "m must be >= 1");
    if (log_q() < 1) throw Error(ErrorCode::InvalidField, "q must be a positive power of p");
}

FieldConfig make_field(long p, int m, long q) {
    FieldConfig f{p, m, q};
    f.check();
    return f;
}

long vp(const Integer& x, long p) {
    if (x == 0) throw Error(ErrorCode::DivisionByZero, "valuation of 0");
    Integer r = x;
    Integer pp = static_cast<unsigned long>(p);
    return static_cast<long>(mpz_remove(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t()));
}

long vp(const Rational& x, long p) {
    return vp(Integer(x.get_num()), p) - vp(Integer(x.get_den()), p);
}

long factorial_valuation(long i, long p) {
    long s = 0;
    for (long pk = p; pk <= i; pk *= p) {
        s += i / pk;
        if (pk > i / p) break;
    }
    return s;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(int v) : Scalar(Rational(v)) {}
Scalar::Scalar(long v) : Scalar(Rational(v)) {}
Scalar::Scalar(const Rational& v) {
    if (v != 0) c_.push_back(v);
}
Scalar::Scalar(const Rational& v, const FieldConfig& f) : Scalar(v) {
    p_ = f.p;
    m_ = f.m;
}

Scalar Scalar::pi(const FieldConfig& f) { return pi_power(1, f); }

Scalar Scalar::pi_power(long k, const FieldConfig& f, const Rational& c) {
    long s = k >= 0 ? k / f.m : -((-k + f.m - 1) / f.m);
    long r = k - s * f.m;
    Rational scale = c;
    Integer pp = static_cast<unsigned long>(f.p);
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), pp.get_mpz_t(), static_cast<unsigned long>(s >= 0 ? s : -s));
    if (s >= 0)
        scale *= pw;
    else
        scale /= pw;
    Scalar x(Rational(0), f);
    if (scale != 0) {
        x.c_.assign(static_cast<size_t>(r) + 1, Rational(0));
        x.c_[static_cast<size_t>(r)] = scale;
    }
    return x;
}

FieldConfig Scalar::field(long q) const { return FieldConfig{p_, m_, q}; }

Rational Scalar::coeff(int j) const {
    return j >= 0 && j < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(j)] : Rational(0);
}

bool Scalar::is_monomial() const {
    if (c_.empty()) return false;
    for (size_t j = 0; j + 1 < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

Scalar Scalar::bind(const FieldConfig& f) const {
    if (m_ != 0 && (m_ != f.m || p_ != f.p))
        throw Error(ErrorCode::FieldMismatch, "cannot rebind scalar to another field");
    Scalar x = *this;
    x.p_ = f.p;
    x.m_ = f.m;
    return x;
}

void Scalar::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Scalar::adopt(const Scalar& o) {
    if (o.m_ == 0) return;
    if (m_ == 0) {
        p_ = o.p_;
        m_ = o.m_;
    } else if (m_ != o.m_ || p_ != o.p_) {
        throw Error(ErrorCode::FieldMismatch, "scalars from different fields");
    }
}

Valuation Scalar::valuation() const {
    if (c_.empty()) return std::nullopt;
    if (m_ == 0) {
        if (c_.size() > 1) throw Error(ErrorCode::FieldMismatch, "unbound scalar");
        throw Error(ErrorCode::FieldMismatch, "valuation of an unbound rational needs a field");
    }
    Valuation best;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        Rational frac(static_cast<long>(j), m_);
        frac.canonicalize();
        Rational v = Rational(vp(c_[j], p_)) + frac;
        if (!best || v < *best) best = v;
    }
    return best;
}

Scalar Scalar::operator-() const {
    Scalar x = *this;
    for (auto& c : x.c_) c = -c;
    return x;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t j = 0; j < o.c_.size(); ++j)
        if (o.c_[j] != 0) c_[j] += o.c_[j];
    trim();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t j = 0; j < o.c_.size(); ++j)
        if (o.c_[j] != 0) c_[j] -= o.c_[j];
    trim();
    return *this;
}

Scalar& Scalar::operator*=(const Rational& r) {
    if (r == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_)
        if (c != 0) c *= r;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    adopt(o);
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    if (o.c_.size() == 1) return *this *= o.c_[0];
    if (c_.size() == 1) {
        Rational r = c_[0];
        c_ = o.c_;
        return *this *= r;
    }
    const size_t m = static_cast<size_t>(m_);
    std::vector<Rational> r(m, Rational(0));
    Rational tmp;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            tmp = c_[i] * o.c_[j];
            size_t k = i + j;
            if (k >= m) {
                tmp *= p_;
                k -= m;
            }
            r[k] += tmp;
        }
    }
    c_ = std::move(r);
    trim();
    return *this;
}

Scalar Scalar::inverse() const {
    if (c_.empty()) throw Error(ErrorCode::DivisionByZero, "inverse of 0");
    if (c_.size() == 1) {
        Scalar x = *this;
        x.c_[0] = 1 / c_[0];
        return x;
    }
    FieldConfig f{p_, m_, p_};
    if (is_monomial()) {
        long j = static_cast<long>(c_.size()) - 1;
        return pi_power(-j, f, 1 / c_.back());
    }
    // Solve (multiplication by x) * y = 1 over Q.
    const int m = m_;
    std::vector<std::vector<Rational>> M(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(m) + 1, Rational(0)));
    for (int j = 0; j < m; ++j) {
        Scalar col = *this * pi_power(j, f);
        for (int i = 0; i < m; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.coeff(i);
    }
    M[0][static_cast<size_t>(m)] = 1;
    for (int c = 0; c < m; ++c) {
        int piv = -1;
        for (int r = c; r < m; ++r)
            if (M[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error(ErrorCode::DivisionByZero, "singular multiplication matrix");
        std::swap(M[static_cast<size_t>(c)], M[static_cast<size_t>(piv)]);
        Rational inv = 1 / M[static_cast<size_t>(c)][static_cast<size_t>(c)];
        for (auto& e : M[static_cast<size_t>(c)]) e *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == c || M[static_cast<size_t>(r)][static_cast<size_t>(c)] == 0) continue;
            Rational f2 = M[static_cast<size_t>(r)][static_cast<size_t>(c)];
            for (int k = c; k <= m; ++k)
                M[static_cast<size_t>(r)][static_cast<size_t>(k)] -= f2 * M[static_cast<size_t>(c)][static_cast<size_t>(k)];
        }
    }
    Scalar y(Rational(0), f);
    y.c_.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) y.c_[static_cast<size_t>(i)] = M[static_cast<size_t>(i)][static_cast<size_t>(m)];
    y.trim();
    return y;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by 0");
    adopt(o);
    if (o.c_.size() == 1) return *this *= Rational(1 / o.c_[0]);
    Scalar inv = o.inverse();
    return *this *= inv;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(Rational(1));
    r.p_ = p_;
    r.m_ = m_;
    Scalar b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t j = 0; j < c_.size(); ++j)
        if (c_[j] != o.c_[j]) return false;
    return true;
}

std::string rat_str(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

std::string Scalar::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (j == 0) {
            os << rat_str(c_[j]);
        } else {
            os << "(" << rat_str(c_[j]) << ") pi";
            if (j > 1) os << "^" << j;
        }
    }
    return os.str();
}

Valuation valuation(const Scalar& x) { return x.valuation(); }

double norm(const Scalar& x) {
    Valuation v = x.valuation();
    if (!v) return 0.0;
    return std::pow(static_cast<double>(x.p()), -v->get_d());
}

bool val_less(const Valuation& a, const Valuation& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

Valuation val_min(const Valuation& a, const Valuation& b) { return val_less(b, a) ? b : a; }

Valuation val_add(const Valuation& a, const Valuation& b) {
    if (!a || !b) return std::nullopt;
    return Rational(*a + *b);
}

std::string val_str(const Valuation& v) { return v ? rat_str(*v) : std::string("inf"); }

Integer floor_q(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Integer ceil_q(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

}  // namespace lgf
