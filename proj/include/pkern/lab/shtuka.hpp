#pragma once

#include "pkern/affine_weyl.hpp"
#include "pkern/error.hpp"
#include "pkern/field/galois_field.hpp"
#include "pkern/field/linear_algebra.hpp"
#include "pkern/field/matrix.hpp"
#include "pkern/field/poly.hpp"
#include "pkern/lab/bt1.hpp"
#include "pkern/polygons.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace pkern::lab {

using field::Poly;
using field::PolyMatrix;

/// Field F_{p^r} selection for the oracle.
struct FieldConfig {
    int p = 2;
    int r = 2;

    const GaloisField& field() const { return GaloisField::get(p, r); }
};

/// Deterministic random source; one independent stream per (seed, index).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0) : eng_(mix(seed, stream)) {}

    std::uint64_t next() { return eng_(); }
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }
    Elem element(const GaloisField& F) { return static_cast<Elem>(below(static_cast<std::uint64_t>(F.order()))); }
    Elem nonzero(const GaloisField& F) { return static_cast<Elem>(1 + below(static_cast<std::uint64_t>(F.order() - 1))); }

    /// Random polynomial with exponents in [lo, lo + len).
    Poly poly(const GaloisField& F, int len, int lo = 0)
    {
        std::vector<Elem> c(static_cast<std::size_t>(std::max(len, 0)));
        for (auto& a : c)
            a = element(F);
        return Poly::from_coeffs(F, std::move(c), lo);
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream)
    {
        std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + stream + 0x632BE59BD9B4E019ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
};

/// A = left * eps^mu * right with left, right in GL_h(O).
struct ShtukaWitness {
    PolyMatrix left;
    std::vector<int> mu;
    PolyMatrix right;
};

/**
 * M = (O^h, A sigma) with O = F_{p^r}[[t]] and A a matrix of polynomials.
 *
 * The reduction of V needs eps A^{-1} mod t. It comes either from a
 * factorization witness or from an exact matrix B with V = B sigma^{-1}.
 */
struct LocalShtuka {
    const GaloisField* field = nullptr;
    int h = 0;
    PolyMatrix A;
    std::optional<ShtukaWitness> witness;
    std::optional<PolyMatrix> v_matrix;
};

/// Matrix of an affine Weyl element: t^{lam_{u(j)}} at (u(j), j).
inline PolyMatrix matrix_of(const AffineWeylElement& x, const GaloisField& F)
{
    const int h = x.rank();
    PolyMatrix M = field::poly_matrix(F, h, h);
    for (int j = 1; j <= h; ++j)
        M(x.perm()(j) - 1, j - 1) = Poly::monomial(F, 1, x.column_exponent(j));
    return M;
}

/// Reads a monomial matrix back into an affine Weyl element (unit entries
/// must be exactly powers of t).
inline std::optional<AffineWeylElement> element_of(const PolyMatrix& M)
{
    const int h = M.rows();
    std::vector<int> img(static_cast<std::size_t>(h), 0), lam(static_cast<std::size_t>(h), 0);
    for (int j = 0; j < h; ++j) {
        int found = -1;
        for (int i = 0; i < h; ++i) {
            const Poly& e = M(i, j);
            if (e.is_zero())
                continue;
            if (found >= 0 || e.top_degree() != e.valuation() || e.low_coeff() != 1)
                return std::nullopt;
            found = i;
            lam[i] = e.valuation();
        }
        if (found < 0)
            return std::nullopt;
        img[j] = found + 1;
    }
    std::vector<bool> seen(static_cast<std::size_t>(h + 1), false);
    for (int v : img) {
        if (seen[v])
            return std::nullopt;
        seen[v] = true;
    }
    return AffineWeylElement(lam, Permutation(img));
}

/// Shtuka of a minuscule monomial: x = eps^lam P_u, witness (1, lam, P_u).
inline LocalShtuka shtuka_of_element(const AffineWeylElement& x, const GaloisField& F)
{
    pkern::detail::require(in_minuscule_double_coset(x, x.rank(), x.det_valuation()),
                    "shtuka of a non-minuscule element");
    LocalShtuka s;
    s.field = &F;
    s.h = x.rank();
    s.A = matrix_of(x, F);
    s.witness = ShtukaWitness{field::poly_identity(F, s.h), x.lam_vector(),
                              matrix_of(AffineWeylElement::from_perm(x.perm()), F)};
    return s;
}

inline LocalShtuka minimal_shtuka(const NewtonPolygon& P, const GaloisField& F)
{
    return shtuka_of_element(x_of_polygon(P), F);
}

/// Random matrix in GL_h(O) with polynomial entries of degree < deg.
inline PolyMatrix random_unimodular(const GaloisField& F, int h, int deg, Rng& rng)
{
    for (;;) {
        PolyMatrix U = field::poly_matrix(F, h, h);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                U(i, j) = rng.poly(F, deg);
        if (field::rank(field::reduce_mod_t(F, U)) == h)
            return U;
    }
}

/// A = U_1 eps^mu U_2 with random U_i; deterministic in the seed.
inline LocalShtuka sample_shtuka(const HodgeDatum& hd, const FieldConfig& cfg, int deg, std::uint64_t seed,
                                 std::uint64_t stream = 0)
{
    pkern::detail::require(deg >= 1, "sampling degree must be at least 1");
    const GaloisField& F = cfg.field();
    Rng rng(seed, stream);
    std::vector<int> mu = mu_and_type(hd).mu;
    PolyMatrix U1 = random_unimodular(F, hd.h, deg, rng);
    PolyMatrix U2 = random_unimodular(F, hd.h, deg, rng);
    LocalShtuka s;
    s.field = &F;
    s.h = hd.h;
    s.A = U1 * matrix_of(AffineWeylElement::translation(mu), F) * U2;
    s.witness = ShtukaWitness{U1, mu, U2};
    return s;
}

/// Reduction mod t: F = A(0) sigma, V = sigma^{-1}(eps A^{-1})(0) sigma^{-1}.
inline Bt1Module bt1_of(const LocalShtuka& s)
{
    const GaloisField& F = *s.field;
    FqMatrix MF = field::reduce_mod_t(F, s.A);
    FqMatrix MV;
    if (s.v_matrix) {
        MV = field::reduce_mod_t(F, *s.v_matrix);
    } else {
        pkern::detail::require(s.witness.has_value(), "bt1_of needs a factorization witness or a V matrix");
        const auto& w = *s.witness;
        FqMatrix D(F, s.h, s.h);
        for (int i = 0; i < s.h; ++i) {
            pkern::detail::require(w.mu[i] == 0 || w.mu[i] == 1, "witness cocharacter is not minuscule");
            D(i, i) = w.mu[i] == 1 ? 1 : 0;
        }
        FqMatrix epsAinv = field::inverse(field::reduce_mod_t(F, w.right)) * D *
                           field::inverse(field::reduce_mod_t(F, w.left));
        MV = epsAinv.frob(-1);
    }
    Bt1Module Z(F, MF, MV);
    pkern::detail::ensure(Z.is_valid(), "reduction of a shtuka violates Im F = ker V");
    return Z;
}

/// Lower convex hull of points (k, v_k) (k increasing, v_k finite), as a
/// list of (run length, rise) segments.
inline std::vector<std::pair<int, int>> lower_hull_segments(const std::vector<std::pair<int, int>>& pts)
{
    std::vector<std::pair<int, int>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            auto [x1, y1] = hull[hull.size() - 2];
            auto [x2, y2] = hull.back();
            auto [x3, y3] = p;
            // drop the middle point if it lies on or above the segment
            long cross = static_cast<long>(x2 - x1) * (y3 - y1) - static_cast<long>(y2 - y1) * (x3 - x1);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    std::vector<std::pair<int, int>> segs;
    for (std::size_t i = 1; i < hull.size(); ++i)
        segs.emplace_back(hull[i].first - hull[i - 1].first, hull[i].second - hull[i - 1].second);
    return segs;
}

/**
 * Newton polygon of (A sigma): eigenvalue valuations of the linear map
 * (A sigma)^r = A sigma(A) ... sigma^{r-1}(A), divided by r.
 */
inline NewtonPolygon newton_polygon_of(const LocalShtuka& s)
{
    const GaloisField& F = *s.field;
    const int r = F.degree();
    PolyMatrix B = s.A;
    for (int k = 1; k < r; ++k)
        B = B * field::frob(s.A, k);
    std::vector<Poly> cp = field::charpoly_berkowitz(B, Poly::one(F));
    std::vector<std::pair<int, int>> pts;
    for (int k = 0; k <= s.h; ++k) {
        if (cp[k].is_zero())
            continue;
        int v = cp[k].valuation();
        pkern::detail::ensure(v >= 0, "characteristic polynomial has non-integral coefficients");
        pts.emplace_back(k, v);
    }
    pkern::detail::require(pts.back().first == s.h, "singular Frobenius matrix");
    std::vector<Rational> slopes;
    for (auto [len, rise] : lower_hull_segments(pts))
        for (int i = 0; i < len; ++i)
            slopes.emplace_back(rise, len * r);
    NewtonPolygon P = polygon_from_slopes(std::move(slopes));
    pkern::detail::ensure(P.height() == s.h, "Newton polygon endpoint has the wrong height");
    return P;
}

/// v_t(det A).
inline int det_valuation(const LocalShtuka& s)
{
    std::vector<Poly> cp = field::charpoly_berkowitz(s.A, Poly::one(*s.field));
    return cp[s.h].valuation();
}

} // namespace pkern::lab
