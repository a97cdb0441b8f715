#pragma once

#include "pkern/error.hpp"
#include "pkern/field/poly.hpp"

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

namespace pkern::field {

/// Dense matrix over a commutative ring T with +, -, *. The zero element is
/// stored so that ring types needing context (polynomials over a given field)
/// can be used.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, T zero) : rows_(rows), cols_(cols), zero_(zero), a_(static_cast<std::size_t>(rows) * cols, zero)
    {
    }

    static Matrix identity(int n, T zero, T one)
    {
        Matrix m(n, n, zero);
        for (int i = 0; i < n; ++i)
            m(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const T& zero() const { return zero_; }

    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        detail::require(x.cols_ == y.rows_, "matrix shapes do not match");
        Matrix r(x.rows_, y.cols_, x.zero_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (xik == x.zero_)
                    continue;
                for (int j = 0; j < y.cols_; ++j)
                    r(i, j) = r(i, j) + xik * y(k, j);
            }
        return r;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y)
    {
        detail::require(x.rows_ == y.rows_ && x.cols_ == y.cols_, "matrix shapes do not match");
        Matrix r = x;
        for (std::size_t k = 0; k < r.a_.size(); ++k)
            r.a_[k] = r.a_[k] + y.a_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y)
    {
        detail::require(x.rows_ == y.rows_ && x.cols_ == y.cols_, "matrix shapes do not match");
        Matrix r = x;
        for (std::size_t k = 0; k < r.a_.size(); ++k)
            r.a_[k] = r.a_[k] - y.a_[k];
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    template <class Fn>
    Matrix map(Fn fn) const
    {
        Matrix r = *this;
        for (auto& v : r.a_)
            v = fn(v);
        return r;
    }

    Matrix transpose() const
    {
        Matrix r(cols_, rows_, zero_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    T zero_{};
    std::vector<T> a_;
};

/**
 * Characteristic polynomial det(x I - A) by Berkowitz's division-free
 * algorithm. Returns c_0 = 1, c_1, ..., c_n with det(xI - A) = sum c_k x^{n-k}.
 */
template <class T>
std::vector<T> charpoly_berkowitz(const Matrix<T>& A, const T& one)
{
    detail::require(A.rows() == A.cols(), "characteristic polynomial of a non-square matrix");
    const int n = A.rows();
    const T zero = A.zero();
    if (n == 0)
        return {one};
    std::vector<T> vect{one, zero - A(0, 0)};
    for (int r = 1; r < n; ++r) {
        // column C = A[0..r-1][r], row R = A[r][0..r-1]
        std::vector<T> t(static_cast<std::size_t>(r) + 2, zero);
        t[0] = one;
        t[1] = zero - A(r, r);
        std::vector<T> w(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i)
            w[i] = A(i, r);
        for (int k = 2; k <= r + 1; ++k) {
            T s = zero;
            for (int j = 0; j < r; ++j)
                s = s + A(r, j) * w[j];
            t[k] = zero - s;
            std::vector<T> nw(static_cast<std::size_t>(r), zero);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    nw[i] = nw[i] + A(i, j) * w[j];
            w = std::move(nw);
        }
        std::vector<T> nv(static_cast<std::size_t>(r) + 2, zero);
        for (int i = 0; i < r + 2; ++i)
            for (int j = 0; j <= i && j < r + 1; ++j)
                nv[i] = nv[i] + t[i - j] * vect[j];
        vect = std::move(nv);
    }
    return vect;
}

using PolyMatrix = Matrix<Poly>;

inline PolyMatrix poly_matrix(const GaloisField& F, int rows, int cols) { return PolyMatrix(rows, cols, Poly(&F)); }

inline PolyMatrix poly_identity(const GaloisField& F, int n)
{
    return PolyMatrix::identity(n, Poly(&F), Poly::one(F));
}

/// Entrywise coefficient Frobenius a -> a^{p^k}.
inline PolyMatrix frob(const PolyMatrix& M, int k = 1)
{
    return M.map([k](const Poly& p) { return p.frob(k); });
}

/// Smallest valuation of an entry; INT_MAX for the zero matrix.
inline int min_valuation(const PolyMatrix& M)
{
    int v = INT_MAX;
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            v = std::min(v, M(i, j).valuation());
    return v;
}

} // namespace pkern::field
