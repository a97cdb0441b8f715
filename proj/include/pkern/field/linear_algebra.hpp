#pragma once

#include "pkern/error.hpp"
#include "pkern/field/galois_field.hpp"
#include "pkern/field/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pkern::field {

using Vec = std::vector<Elem>;

/// Dense matrix over F_{p^r}.
class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(const GaloisField& F, int rows, int cols)
        : F_(&F), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0)
    {
    }

    static FqMatrix identity(const GaloisField& F, int n)
    {
        FqMatrix m(F, n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    /// Matrix whose columns are the given vectors.
    static FqMatrix from_columns(const GaloisField& F, int rows, const std::vector<Vec>& cols)
    {
        FqMatrix m(F, rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols_; ++j)
            for (int i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        return m;
    }

    static FqMatrix from_rows(const GaloisField& F, int cols, const std::vector<Vec>& rows)
    {
        FqMatrix m(F, static_cast<int>(rows.size()), cols);
        for (int i = 0; i < m.rows_; ++i)
            for (int j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        return m;
    }

    const GaloisField& field() const { return *F_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Elem& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    Elem operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Vec column(int j) const
    {
        Vec v(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    Vec row(int i) const { return Vec(a_.begin() + static_cast<long>(i) * cols_, a_.begin() + static_cast<long>(i + 1) * cols_); }

    friend FqMatrix operator*(const FqMatrix& x, const FqMatrix& y)
    {
        detail::require(x.cols_ == y.rows_, "matrix shapes do not match");
        const GaloisField& F = *x.F_;
        FqMatrix r(F, x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                Elem xik = x(i, k);
                if (xik == 0)
                    continue;
                for (int j = 0; j < y.cols_; ++j)
                    r(i, j) = F.add(r(i, j), F.mul(xik, y(k, j)));
            }
        return r;
    }

    friend FqMatrix operator+(const FqMatrix& x, const FqMatrix& y)
    {
        detail::require(x.rows_ == y.rows_ && x.cols_ == y.cols_, "matrix shapes do not match");
        FqMatrix r = x;
        for (std::size_t k = 0; k < r.a_.size(); ++k)
            r.a_[k] = x.F_->add(r.a_[k], y.a_[k]);
        return r;
    }

    Vec apply(const Vec& v) const
    {
        detail::require(static_cast<int>(v.size()) == cols_, "vector has the wrong length");
        Vec r(static_cast<std::size_t>(rows_), 0);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r[i] = F_->add(r[i], F_->mul((*this)(i, j), v[j]));
        return r;
    }

    /// Entrywise a -> a^{p^k}.
    FqMatrix frob(int k = 1) const
    {
        FqMatrix r = *this;
        for (auto& a : r.a_)
            a = F_->frob_pow(a, k);
        return r;
    }

    friend bool operator==(const FqMatrix& x, const FqMatrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    bool is_zero() const
    {
        for (Elem a : a_)
            if (a != 0)
                return false;
        return true;
    }

    std::string to_string() const
    {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            if (i)
                s += ";";
            for (int j = 0; j < cols_; ++j) {
                if (j)
                    s += ",";
                s += std::to_string((*this)(i, j));
            }
        }
        return s + "]";
    }

private:
    const GaloisField* F_ = nullptr;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Elem> a_;
};

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> rref(FqMatrix& M)
{
    const GaloisField& F = M.field();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < M.cols() && row < M.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < M.rows(); ++i)
            if (M(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != row)
            for (int j = 0; j < M.cols(); ++j)
                std::swap(M(piv, j), M(row, j));
        Elem inv = F.inv(M(row, col));
        for (int j = 0; j < M.cols(); ++j)
            M(row, j) = F.mul(M(row, j), inv);
        for (int i = 0; i < M.rows(); ++i) {
            if (i == row || M(i, col) == 0)
                continue;
            Elem c = M(i, col);
            for (int j = 0; j < M.cols(); ++j)
                M(i, j) = F.sub(M(i, j), F.mul(c, M(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(FqMatrix M) { return static_cast<int>(rref(M).size()); }

/// Basis of the null space {v : M v = 0}.
inline std::vector<Vec> kernel(FqMatrix M)
{
    const GaloisField& F = M.field();
    std::vector<int> piv = rref(M);
    std::vector<bool> is_piv(static_cast<std::size_t>(M.cols()), false);
    for (int c : piv)
        is_piv[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < M.cols(); ++free) {
        if (is_piv[free])
            continue;
        Vec v(static_cast<std::size_t>(M.cols()), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = F.neg(M(static_cast<int>(r), free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Inverse of a square matrix; throws if singular.
inline FqMatrix inverse(const FqMatrix& M)
{
    const int n = M.rows();
    detail::require(n == M.cols(), "inverse of a non-square matrix");
    const GaloisField& F = M.field();
    FqMatrix aug(F, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug(i, j) = M(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<int> piv = rref(aug);
    detail::require(static_cast<int>(piv.size()) == n && piv.back() == n - 1, "matrix is singular");
    FqMatrix inv(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

/**
 * Subspace of F^n stored by its reduced row echelon basis, which makes the
 * representation canonical (equality is equality of bases).
 */
class Subspace {
public:
    Subspace() = default;
    Subspace(const GaloisField& F, int n) : F_(&F), n_(n) {}

    static Subspace span(const GaloisField& F, int n, const std::vector<Vec>& vectors)
    {
        Subspace s(F, n);
        if (vectors.empty())
            return s;
        FqMatrix M = FqMatrix::from_rows(F, n, vectors);
        std::vector<int> piv = rref(M);
        for (std::size_t i = 0; i < piv.size(); ++i)
            s.basis_.push_back(M.row(static_cast<int>(i)));
        return s;
    }

    static Subspace whole(const GaloisField& F, int n)
    {
        std::vector<Vec> e;
        for (int i = 0; i < n; ++i) {
            Vec v(static_cast<std::size_t>(n), 0);
            v[i] = 1;
            e.push_back(v);
        }
        return span(F, n, e);
    }

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }
    const GaloisField& field() const { return *F_; }

    bool contains(const Vec& v) const
    {
        std::vector<Vec> ext = basis_;
        ext.push_back(v);
        return span(*F_, n_, ext).dim() == dim();
    }

    bool contains(const Subspace& o) const
    {
        for (const auto& v : o.basis_)
            if (!contains(v))
                return false;
        return true;
    }

    Subspace sum(const Subspace& o) const
    {
        std::vector<Vec> ext = basis_;
        ext.insert(ext.end(), o.basis_.begin(), o.basis_.end());
        return span(*F_, n_, ext);
    }

    /// Linear functionals vanishing on the subspace, as row vectors.
    std::vector<Vec> annihilator() const
    {
        if (basis_.empty())
            return whole(*F_, n_).basis();
        return kernel(FqMatrix::from_rows(*F_, n_, basis_));
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

    /// Ordering by (dim, basis) for use in ordered containers.
    friend bool operator<(const Subspace& a, const Subspace& b)
    {
        if (a.dim() != b.dim())
            return a.dim() < b.dim();
        return a.basis_ < b.basis_;
    }

private:
    const GaloisField* F_ = nullptr;
    int n_ = 0;
    std::vector<Vec> basis_;
};

/// Image of U under the linear map M.
inline Subspace image(const FqMatrix& M, const Subspace& U)
{
    std::vector<Vec> imgs;
    for (const auto& v : U.basis())
        imgs.push_back(M.apply(v));
    return Subspace::span(M.field(), M.rows(), imgs);
}

/// {v : M v in U}.
inline Subspace preimage(const FqMatrix& M, const Subspace& U)
{
    std::vector<Vec> ann = U.annihilator();
    if (ann.empty())
        return Subspace::whole(M.field(), M.cols());
    FqMatrix Q = FqMatrix::from_rows(M.field(), M.rows(), ann) * M;
    return Subspace::span(M.field(), M.cols(), kernel(Q));
}

/// Coordinatewise a -> a^{p^k} applied to a subspace (the result is again a
/// subspace because Frobenius is a field automorphism).
inline Subspace frob(const Subspace& U, int k = 1)
{
    std::vector<Vec> b;
    for (auto v : U.basis()) {
        for (auto& a : v)
            a = U.field().frob_pow(a, k);
        b.push_back(std::move(v));
    }
    return Subspace::span(U.field(), U.ambient(), b);
}

/// Column space of M.
inline Subspace column_space(const FqMatrix& M)
{
    std::vector<Vec> cols;
    for (int j = 0; j < M.cols(); ++j)
        cols.push_back(M.column(j));
    return Subspace::span(M.field(), M.rows(), cols);
}

/// Constant terms (reduction mod t) of a matrix with entries in F[t].
inline FqMatrix reduce_mod_t(const GaloisField& F, const PolyMatrix& M)
{
    FqMatrix r(F, M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) {
            detail::require(M(i, j).valuation() >= 0, "matrix entry is not integral");
            r(i, j) = M(i, j).coeff(0);
        }
    return r;
}

/// Embeds a constant matrix into the polynomial matrices.
inline PolyMatrix to_poly(const FqMatrix& M)
{
    const GaloisField& F = M.field();
    PolyMatrix r = poly_matrix(F, M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            r(i, j) = Poly::constant(F, M(i, j));
    return r;
}

} // namespace pkern::field
