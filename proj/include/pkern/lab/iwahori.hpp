#pragma once

#include "pkern/affine_weyl.hpp"
#include "pkern/error.hpp"
#include "pkern/field/matrix.hpp"
#include "pkern/lab/shtuka.hpp"

#include <climits>
#include <utility>
#include <vector>

namespace pkern::lab {

/**
 * The w with M in I w I, by valuation-pivot elimination.
 *
 * Each step picks an entry of minimal valuation v, taking the lowest row that
 * contains such an entry and then the leftmost such entry in that row. Then
 * every other entry in its column below it has valuation > v and every entry
 * to its left in its row has valuation > v, so the fraction-free updates
 *   row_k <- a' row_k - b' row_pivot,   col_l <- a' col_l - c' col_pivot
 * (a = t^v a', b = t^v b', c = t^v c') are products of Iwahori elements.
 */
inline AffineWeylElement iwahori_class_of(PolyMatrix M)
{
    const int h = M.rows();
    pkern::detail::require(h == M.cols() && h >= 1, "iwahori_class_of needs a square matrix");
    std::vector<bool> row_done(static_cast<std::size_t>(h), false), col_done(static_cast<std::size_t>(h), false);
    std::vector<int> img(static_cast<std::size_t>(h)), lam(static_cast<std::size_t>(h));
    for (int step = 0; step < h; ++step) {
        int v = INT_MAX;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                if (!row_done[i] && !col_done[j])
                    v = std::min(v, M(i, j).valuation());
        pkern::detail::require(v != INT_MAX, "singular matrix");
        int pr = -1, pc = -1;
        for (int i = h - 1; i >= 0 && pr < 0; --i) {
            if (row_done[i])
                continue;
            for (int j = 0; j < h; ++j)
                if (!col_done[j] && M(i, j).valuation() == v) {
                    pr = i;
                    pc = j;
                    break;
                }
        }
        Poly a = M(pr, pc).shifted(-v);
        for (int k = 0; k < h; ++k) {
            if (k == pr || row_done[k] || M(k, pc).is_zero())
                continue;
            Poly b = M(k, pc).shifted(-v);
            for (int j = 0; j < h; ++j)
                if (!col_done[j])
                    M(k, j) = a * M(k, j) - b * M(pr, j);
        }
        for (int l = 0; l < h; ++l) {
            if (l == pc || col_done[l] || M(pr, l).is_zero())
                continue;
            Poly c = M(pr, l).shifted(-v);
            for (int i = 0; i < h; ++i)
                if (!row_done[i])
                    M(i, l) = a * M(i, l) - c * M(i, pc);
        }
        row_done[pr] = true;
        col_done[pc] = true;
        img[pc] = pr + 1;
        lam[pr] = v;
    }
    return AffineWeylElement(lam, Permutation(img));
}

/// Element together with its exact inverse.
struct InvertiblePair {
    PolyMatrix g;
    PolyMatrix inv;
};

namespace detail {

/// 1 + c E_{ij}.
inline PolyMatrix elementary(const GaloisField& F, int h, int i, int j, const Poly& c)
{
    PolyMatrix E = field::poly_identity(F, h);
    E(i, j) = c;
    return E;
}

inline InvertiblePair random_product(const GaloisField& F, int h, int deg, Rng& rng, bool iwahori, int factors)
{
    PolyMatrix g = field::poly_identity(F, h);
    PolyMatrix inv = field::poly_identity(F, h);
    PolyMatrix D = field::poly_matrix(F, h, h), Dinv = field::poly_matrix(F, h, h);
    for (int i = 0; i < h; ++i) {
        Elem d = rng.nonzero(F);
        D(i, i) = Poly::constant(F, d);
        Dinv(i, i) = Poly::constant(F, F.inv(d));
    }
    g = D;
    inv = Dinv;
    if (h < 2)
        return {g, inv};
    for (int f = 0; f < factors; ++f) {
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(h)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(h - 1)));
        if (j >= i)
            ++j;
        bool lower = i > j;
        Poly c = (iwahori && lower) ? rng.poly(F, deg, 1) : rng.poly(F, deg, 0);
        g = g * elementary(F, h, i, j, c);
        inv = elementary(F, h, i, j, -c) * inv;
    }
    return {g, inv};
}

} // namespace detail

/// Random element of the Iwahori subgroup with exact inverse: a constant
/// diagonal times elementary matrices (upper entries in O, lower in tO).
inline InvertiblePair random_iwahori(const GaloisField& F, int h, int deg, Rng& rng)
{
    return detail::random_product(F, h, deg, rng, true, 3 * h * h);
}

/// Random element of G(O) with exact inverse.
inline InvertiblePair random_gl_O(const GaloisField& F, int h, int deg, Rng& rng)
{
    return detail::random_product(F, h, deg, rng, false, 3 * h * h);
}

/**
 * Iwahori classes of g x sigma(g)^{-1} for random g in G(O). The inverse of
 * g is carried exactly, so no truncation enters and the class is always
 * determined.
 */
inline std::vector<AffineWeylElement> sigma_conjugate_sample(const AffineWeylElement& x, const FieldConfig& cfg,
                                                             int trials, std::uint64_t seed, int deg = 2)
{
    const GaloisField& F = cfg.field();
    PolyMatrix X = matrix_of(x, F);
    std::vector<AffineWeylElement> out;
    out.reserve(static_cast<std::size_t>(std::max(trials, 0)));
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        InvertiblePair g = random_gl_O(F, x.rank(), deg, rng);
        out.push_back(iwahori_class_of(g.g * X * field::frob(g.inv, 1)));
    }
    return out;
}

} // namespace pkern::lab
