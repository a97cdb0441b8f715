#pragma once

// Independent reference computations used only by the tests.

#include "pkern/pkern.hpp"

#include <climits>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracles {

using pkern::AffineWeylElement;
using pkern::Permutation;
using pkern::field::Poly;
using pkern::field::PolyMatrix;

/// Entry valuation bound of the standard Iwahori at (a, b): 1 below the diagonal.
inline int iwahori_bound(int a, int b) { return a > b ? 1 : 0; }

/**
 * [I : I cap x I x^{-1}] as a sum over root subgroups, computed by
 * conjugating t^k E_{ab} with explicit matrices: the subgroup U_{ab}(t^k O)
 * lies in x I x^{-1} iff x^{-1} (1 + t^k E_ab) x is in I.
 */
inline int index_length(const AffineWeylElement& x)
{
    const auto& F = pkern::field::GaloisField::get(2, 1);
    const int h = x.rank();
    PolyMatrix X = pkern::lab::matrix_of(x, F);
    PolyMatrix Xi = pkern::lab::matrix_of(x.inverse(), F);
    int total = 0;
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b) {
            if (a == b)
                continue;
            // smallest k with x^{-1} (t^k E_ab) x having valuation >= the bound where it lands
            auto inside = [&](int k) {
                PolyMatrix E = pkern::field::poly_matrix(F, h, h);
                E(a, b) = Poly::monomial(F, 1, k);
                PolyMatrix C = Xi * E * X;
                for (int i = 0; i < h; ++i)
                    for (int j = 0; j < h; ++j)
                        if (!C(i, j).is_zero() && C(i, j).valuation() < iwahori_bound(i, j))
                            return false;
                return true;
            };
            int k = -64;
            while (!inside(k))
                ++k;
            total += std::max(0, k - iwahori_bound(a, b));
        }
    return total;
}

/**
 * Word length by 0-1 breadth-first search over the generators s_0..s_{h-1}
 * (cost 1) and omega^{+-1} (cost 0), pruned to ||lam||_inf <= box.
 */
inline std::map<AffineWeylElement, int> bfs_lengths(int h, int box, int max_len)
{
    std::vector<AffineWeylElement> refl;
    for (int i = 0; i < h; ++i)
        refl.push_back(pkern::simple_affine(h, i));
    AffineWeylElement om = pkern::omega(h), omi = om.inverse();
    std::map<AffineWeylElement, int> dist;
    std::deque<AffineWeylElement> q;
    auto in_box = [&](const AffineWeylElement& y) {
        for (int i = 1; i <= h; ++i)
            if (std::abs(y.lam(i)) > box)
                return false;
        return true;
    };
    AffineWeylElement e = AffineWeylElement::identity(h);
    dist[e] = 0;
    q.push_back(e);
    while (!q.empty()) {
        AffineWeylElement cur = q.front();
        q.pop_front();
        int d = dist[cur];
        for (const auto& g : {om, omi}) {
            AffineWeylElement nx = cur * g;
            if (!in_box(nx))
                continue;
            auto it = dist.find(nx);
            if (it == dist.end() || it->second > d) {
                dist[nx] = d;
                q.push_front(nx);
            }
        }
        if (d >= max_len)
            continue;
        for (const auto& g : refl) {
            AffineWeylElement nx = cur * g;
            if (!in_box(nx))
                continue;
            auto it = dist.find(nx);
            if (it == dist.end() || it->second > d + 1) {
                dist[nx] = d + 1;
                q.push_back(nx);
            }
        }
    }
    return dist;
}

/**
 * For h = 2 over F_2: |I / K_N| divided by |(I cap x I x^{-1}) / K_N| by
 * enumerating all of I mod t^N. Returns the base-2 logarithm, or -1 if the
 * ratio is not a power of two.
 */
inline int brute_force_index_h2(const AffineWeylElement& x, int N)
{
    const auto& F = pkern::field::GaloisField::get(2, 1);
    PolyMatrix X = pkern::lab::matrix_of(x, F);
    PolyMatrix Xi = pkern::lab::matrix_of(x.inverse(), F);
    const int polys = 1 << N;
    auto poly_of = [&](int bits) {
        std::vector<pkern::field::Elem> c(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i)
            c[i] = (bits >> i) & 1;
        return Poly::from_coeffs(F, c, 0);
    };
    long in_I = 0, in_both = 0;
    for (int a = 0; a < polys; ++a) {
        if (!(a & 1))
            continue; // unit
        for (int d = 0; d < polys; ++d) {
            if (!(d & 1))
                continue;
            for (int b = 0; b < polys; ++b)
                for (int c = 0; c < polys; ++c) {
                    if (c & 1)
                        continue; // lower entry in tO
                    ++in_I;
                    PolyMatrix g = pkern::field::poly_matrix(F, 2, 2);
                    g(0, 0) = poly_of(a);
                    g(0, 1) = poly_of(b);
                    g(1, 0) = poly_of(c);
                    g(1, 1) = poly_of(d);
                    PolyMatrix C = Xi * g * X;
                    bool ok = true;
                    for (int i = 0; i < 2 && ok; ++i)
                        for (int j = 0; j < 2 && ok; ++j) {
                            int need = (i == j) ? 0 : iwahori_bound(i, j);
                            const Poly& e = C(i, j);
                            if (i == j)
                                ok = !e.is_zero() && e.valuation() == 0;
                            else
                                ok = e.is_zero() || e.valuation() >= need;
                        }
                    in_both += ok ? 1 : 0;
                }
        }
    }
    long ratio = in_I / in_both;
    if (ratio * in_both != in_I)
        return -1;
    int lg = 0;
    while ((1L << lg) < ratio)
        ++lg;
    return (1L << lg) == ratio ? lg : -1;
}

/**
 * Semimodule beginnings of type (n, m) by exhaustive search in a window: all
 * sets inside [0, W) containing 0 with exactly one element per residue mod
 * n + m, closed under "c + n in C or c - m in C".
 */
inline std::set<std::set<int>> window_beginnings(int n, int m, int W)
{
    const int h = n + m;
    std::set<std::set<int>> out;
    std::vector<char> in(static_cast<std::size_t>(W + h + n + 1), 0);
    std::vector<int> reps(static_cast<std::size_t>(h), 0);
    std::function<void(int)> rec = [&](int r) {
        if (r == h) {
            for (int c : reps) {
                bool up = in[c + n] != 0;
                bool down = c - m >= 0 && in[c - m] != 0;
                if (!up && !down)
                    return;
            }
            out.insert(std::set<int>(reps.begin(), reps.end()));
            return;
        }
        for (int v = r; v < W; v += h) {
            reps[r] = v;
            in[v] = 1;
            rec(r + 1);
            in[v] = 0;
        }
    };
    reps[0] = 0;
    in[0] = 1;
    rec(1);
    return out;
}

/// Determinant by Laplace expansion along the first row.
inline Poly laplace_det(const PolyMatrix& S, const Poly& one)
{
    const int n = S.rows();
    if (n == 0)
        return one;
    Poly acc = one - one;
    for (int c = 0; c < n; ++c) {
        if (S(0, c).is_zero())
            continue;
        PolyMatrix M(n - 1, n - 1, one - one);
        for (int i = 1; i < n; ++i)
            for (int j = 0, jj = 0; j < n; ++j)
                if (j != c)
                    M(i - 1, jj++) = S(i, j);
        Poly term = S(0, c) * laplace_det(M, one);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// Coefficients of det(x I - A) as signed sums of principal minors, ordered
/// like charpoly_berkowitz (c_0 = 1, c_k the coefficient of x^{n-k}).
inline std::vector<Poly> naive_charpoly(const PolyMatrix& A, const Poly& one)
{
    const int n = A.rows();
    std::vector<Poly> out(static_cast<std::size_t>(n + 1), one - one);
    out[0] = one;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                idx.push_back(i);
        int k = static_cast<int>(idx.size());
        PolyMatrix S(k, k, one - one);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                S(i, j) = A(idx[i], idx[j]);
        Poly d = laplace_det(S, one);
        out[k] = (k % 2 == 0) ? out[k] + d : out[k] - d;
    }
    return out;
}

/**
 * Supports of IxI IyI witnessed by random matrices: classes of X g Y with g a
 * random Iwahori element.
 */
inline std::set<AffineWeylElement> sampled_product_classes(const AffineWeylElement& x, const AffineWeylElement& y,
                                                           int samples, std::uint64_t seed)
{
    const auto& F = pkern::field::GaloisField::get(2, 1);
    PolyMatrix X = pkern::lab::matrix_of(x, F), Y = pkern::lab::matrix_of(y, F);
    std::set<AffineWeylElement> out;
    for (int k = 0; k < samples; ++k) {
        pkern::lab::Rng rng(seed, static_cast<std::uint64_t>(k));
        auto g = pkern::lab::random_iwahori(F, x.rank(), 2, rng);
        out.insert(pkern::lab::iwahori_class_of(X * g.g * Y));
    }
    return out;
}

} // namespace oracles
