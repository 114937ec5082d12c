#include "lgf/matrix.hpp"

#include <sstream>

namespace lgf {

namespace {

template <class T, class IsPivot, class Inv>
Mat<T> gauss_jordan(Mat<T> a, IsPivot&& is_pivot, Inv&& inv, ErrorCode err) {
    const Eigen::Index n = a.rows();
    Mat<T> r = eye<T>(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = c; i < n; ++i)
            if (is_pivot(a(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) throw Error(err, "matrix is not invertible");
        a.row(c).swap(a.row(piv));
        r.row(c).swap(r.row(piv));
        T s = inv(a(c, c));
        for (Eigen::Index j = 0; j < n; ++j) {
            a(c, j) = a(c, j) * s;
            r(c, j) = r(c, j) * s;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == c || is_zero_entry(a(i, c))) continue;
            T f = a(i, c);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (!is_zero_entry(a(c, j))) a(i, j) -= f * a(c, j);
                if (!is_zero_entry(r(c, j))) r(i, j) -= f * r(c, j);
            }
        }
    }
    return r;
}

}  // namespace

Mat<Scalar> inverse(const Mat<Scalar>& a) {
    return gauss_jordan(
        a, [](const Scalar& x) { return !x.is_zero(); }, [](const Scalar& x) { return x.inverse(); },
        ErrorCode::SingularMatrix);
}

Mat<RatFunc> inverse(const Mat<RatFunc>& a) {
    return gauss_jordan(
        a, [](const RatFunc& x) { return !x.is_zero(); }, [](const RatFunc& x) { return RatFunc(1) / x; },
        ErrorCode::SingularA);
}

Mat<Series> inverse(const Mat<Series>& a, long trunc) {
    Mat<Series> b = truncated(a, trunc);
    return truncated(gauss_jordan(
                         b, [](const Series& x) { return !x.is_zero() && x.low() == 0; },
                         [trunc](const Series& x) { return inverse(x, trunc); }, ErrorCode::SingularA),
                     trunc);
}

template <class T, class IsZero, class Inv>
static int rank_impl(Mat<T> a, IsZero&& is0, Inv&& inv) {
    int rk = 0;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    for (Eigen::Index c = 0; c < cols && rk < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = rk; i < rows; ++i)
            if (!is0(a(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        a.row(rk).swap(a.row(piv));
        T s = inv(a(rk, c));
        for (Eigen::Index i = rk + 1; i < rows; ++i) {
            if (is0(a(i, c))) continue;
            T f = a(i, c) * s;
            for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(rk, j);
        }
        ++rk;
    }
    return rk;
}

int rank(const Mat<Scalar>& a) {
    return rank_impl(
        a, [](const Scalar& x) { return x.is_zero(); }, [](const Scalar& x) { return x.inverse(); });
}

int rank(const Mat<RatFunc>& a) {
    return rank_impl(
        a, [](const RatFunc& x) { return x.is_zero(); }, [](const RatFunc& x) { return RatFunc(1) / x; });
}

std::vector<Scalar> char_poly(const Mat<Scalar>& a) {
    // Faddeev-LeVerrier
    const Eigen::Index n = a.rows();
    std::vector<Scalar> c(static_cast<size_t>(n) + 1);
    c[static_cast<size_t>(n)] = Scalar(1);
    Mat<Scalar> m = zeros<Scalar>(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = mul(a, m);
        for (Eigen::Index i = 0; i < n; ++i) m(i, i) += c[static_cast<size_t>(n - k + 1)];
        Mat<Scalar> am = mul(a, m);
        Scalar tr;
        for (Eigen::Index i = 0; i < n; ++i) tr += am(i, i);
        tr *= Rational(-1, static_cast<long>(k));
        c[static_cast<size_t>(n - k)] = tr;
    }
    return c;
}

bool is_nilpotent(const Mat<Scalar>& a) {
    Mat<Scalar> m = a;
    for (Eigen::Index k = 1; k < a.rows(); ++k) m = mul(m, a);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

Mat<Scalar> coeff_matrix(const Mat<Series>& a, long e) {
    return map_entries(a, [e](const Series& s) { return s.coeff(e); });
}

Mat<Series> truncated(const Mat<Series>& a, long n) {
    return map_entries(a, [n](const Series& s) { return s.truncated(n); });
}

long min_trunc(const Mat<Series>& a) {
    long n = kExact;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) n = std::min(n, a(i, j).trunc());
    return n;
}

bool all_exact(const Mat<Series>& a) { return min_trunc(a) == kExact; }

Mat<Series> bind(const Mat<Series>& a, const FieldConfig& f) {
    return map_entries(a, [&f](const Series& s) { return s.bind(f); });
}

std::string str(const Mat<Scalar>& a) {
    std::ostringstream os;
    os << "[";
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        os << (i ? "; " : "");
        for (Eigen::Index j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << a(i, j).str();
    }
    os << "]";
    return os.str();
}

}  // namespace lgf
