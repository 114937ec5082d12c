#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "lgf/series.hpp"

namespace lgf {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
Mat<T> zeros(Eigen::Index r, Eigen::Index c) {
    Mat<T> m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = T(0);
    return m;
}

template <class T>
Mat<T> eye(Eigen::Index n, const T& one = T(1)) {
    Mat<T> m = zeros<T>(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = one;
    return m;
}

template <class T>
bool is_zero_entry(const T& x) {
    return x.is_zero();
}

/// Product that skips zero entries; the exact scalars make this the hot path.
template <class T, class U>
auto mul(const Mat<T>& a, const Mat<U>& b) {
    using R = decltype(a(0, 0) * b(0, 0));
    Mat<R> r = zeros<R>(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (is_zero_entry(a(i, k))) continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j) {
                if (is_zero_entry(b(k, j))) continue;
                r(i, j) += a(i, k) * b(k, j);
            }
        }
    return r;
}

template <class T>
Mat<T> add(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> r = a;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
    return r;
}

template <class T>
Mat<T> sub(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> r = a;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
    return r;
}

template <class T, class S>
Mat<T> scale(const Mat<T>& a, const S& c) {
    Mat<T> r = a;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * c;
    return r;
}

template <class T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> r = zeros<T>(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (is_zero_entry(a(i, j))) continue;
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    if (!is_zero_entry(b(k, l))) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

template <class T>
Mat<T> block_diag(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> r = zeros<T>(a.rows() + b.rows(), a.cols() + b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
    return r;
}

template <class T>
Mat<T> transposed(const Mat<T>& a) {
    Mat<T> r(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

template <class T, class F>
auto map_entries(const Mat<T>& a, F&& f) {
    using R = decltype(f(a(0, 0)));
    Mat<R> r(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) = f(a(i, j));
    return r;
}

/// Determinant of the square submatrix on `rows` x `cols` by Laplace expansion
/// along rows with memoized column subsets; works over any commutative ring.
template <class T>
T minor_det(const Mat<T>& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    const size_t n = rows.size();
    if (n == 0) return T(1);
    // memo[mask] = det of the last popcount(mask) rows on columns in mask
    std::map<unsigned, T> memo;
    for (size_t j = 0; j < n; ++j) memo.emplace(1u << j, a(rows[n - 1], cols[j]));
    for (size_t size = 2; size <= n; ++size) {
        std::map<unsigned, T> next;
        const int row = rows[n - size];
        for (const auto& [mask, val] : memo) {
            (void)val;
            for (size_t j = 0; j < n; ++j) {
                if (mask & (1u << j)) continue;
                unsigned full = mask | (1u << j);
                if (next.count(full)) continue;
                T acc(0);
                int sign = 1;
                for (size_t k = 0; k < n; ++k) {
                    if (!(full & (1u << k))) continue;
                    const T& e = a(row, cols[k]);
                    const T& sub = memo.at(full & ~(1u << k));
                    if (!is_zero_entry(e) && !is_zero_entry(sub)) {
                        if (sign > 0)
                            acc += e * sub;
                        else
                            acc -= e * sub;
                    }
                    sign = -sign;
                }
                next.emplace(full, acc);
            }
        }
        memo = std::move(next);
    }
    return memo.begin()->second;
}

template <class T>
T det(const Mat<T>& a) {
    std::vector<int> idx(static_cast<size_t>(a.rows()));
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return minor_det(a, idx, idx);
}

template <class T>
Mat<T> adjugate(const Mat<T>& a) {
    const int n = static_cast<int>(a.rows());
    Mat<T> r = zeros<T>(n, n);
    if (n == 1) {
        r(0, 0) = T(1);
        return r;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int k = 0; k < n; ++k) {
                if (k != j) rows.push_back(k);
                if (k != i) cols.push_back(k);
            }
            T d = minor_det(a, rows, cols);
            r(i, j) = ((i + j) % 2 == 0) ? d : T(0) - d;
        }
    return r;
}

/// k-th exterior power with subsets in lexicographic order.
template <class T>
Mat<T> exterior_power(const Mat<T>& a, int k) {
    const int n = static_cast<int>(a.rows());
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            subsets.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    const auto m = static_cast<Eigen::Index>(subsets.size());
    Mat<T> r = zeros<T>(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            r(i, j) = minor_det(a, subsets[static_cast<size_t>(i)], subsets[static_cast<size_t>(j)]);
    return r;
}

// Exact linear algebra over K.
Mat<Scalar> inverse(const Mat<Scalar>& a);
int rank(const Mat<Scalar>& a);
/// Coefficients c_0..c_n of det(X I - a), c_n = 1.
std::vector<Scalar> char_poly(const Mat<Scalar>& a);
bool is_nilpotent(const Mat<Scalar>& a);

// Over K(t): Gauss-Jordan.
Mat<RatFunc> inverse(const Mat<RatFunc>& a);
/// Rank of the specialization at nothing: generic rank over K(t).
int rank(const Mat<RatFunc>& a);

/// Inverse over the power-series ring, valid through `trunc`; needs A(0) invertible.
Mat<Series> inverse(const Mat<Series>& a, long trunc);

/// Coefficient matrix of t^e.
Mat<Scalar> coeff_matrix(const Mat<Series>& a, long e);
Mat<Series> truncated(const Mat<Series>& a, long n);
long min_trunc(const Mat<Series>& a);
bool all_exact(const Mat<Series>& a);
Mat<Series> bind(const Mat<Series>& a, const FieldConfig& f);

std::string str(const Mat<Scalar>& a);

}  // namespace lgf
