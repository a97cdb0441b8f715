#pragma once

#include "pkern/error.hpp"
#include "pkern/permutation.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pkern {

/**
 * Element of the extended affine Weyl group of GL_h, i.e. a monomial matrix
 * with entries in {0} and eps^Z.
 *
 * The pair (lam, u) stands for the matrix eps^lam * P_u, which has the entry
 * eps^{lam_{u(j)}} at position (u(j), j). The group law is
 *   (lam, u) (mu, v) = (lam + u.mu, u v),   (u.mu)_i = mu_{u^{-1}(i)},
 * which is ordinary matrix multiplication in this encoding.
 */
class AffineWeylElement {
public:
    AffineWeylElement() = default;

    AffineWeylElement(std::span<const int> lam, const Permutation& u) : perm_(u)
    {
        detail::require(static_cast<int>(lam.size()) == u.degree(),
                        "translation part and permutation have different sizes");
        for (std::size_t i = 0; i < lam.size(); ++i)
            lam_[i] = lam[i];
    }

    AffineWeylElement(const std::vector<int>& lam, const Permutation& u)
        : AffineWeylElement(std::span<const int>(lam), u)
    {
    }

    static AffineWeylElement identity(int h)
    {
        return AffineWeylElement(std::vector<int>(static_cast<std::size_t>(h), 0),
                                 Permutation::identity(h));
    }

    /// eps^lam.
    static AffineWeylElement translation(std::span<const int> lam)
    {
        return AffineWeylElement(lam, Permutation::identity(static_cast<int>(lam.size())));
    }

    static AffineWeylElement translation(const std::vector<int>& lam)
    {
        return translation(std::span<const int>(lam));
    }

    /// A finite Weyl group element with zero translation part.
    static AffineWeylElement from_perm(const Permutation& u)
    {
        return AffineWeylElement(std::vector<int>(static_cast<std::size_t>(u.degree()), 0), u);
    }

    int rank() const { return perm_.degree(); }
    const Permutation& perm() const { return perm_; }

    /// lam_i, 1-based.
    int lam(int i) const { return lam_[i - 1]; }
    std::vector<int> lam_vector() const { return {lam_.begin(), lam_.begin() + rank()}; }

    /// Exponent of the nonzero entry in column j (1-based).
    int column_exponent(int j) const { return lam_[perm_(j) - 1]; }

    /// v(det), the sum of all exponents.
    int det_valuation() const
    {
        int s = 0;
        for (int i = 0; i < rank(); ++i)
            s += lam_[i];
        return s;
    }

    AffineWeylElement inverse() const
    {
        AffineWeylElement r;
        r.perm_ = perm_.inverse();
        for (int i = 1; i <= rank(); ++i)
            r.lam_[i - 1] = -lam_[perm_(i) - 1];
        return r;
    }

    friend AffineWeylElement operator*(const AffineWeylElement& x, const AffineWeylElement& y)
    {
        detail::require(x.rank() == y.rank(), "affine Weyl elements of different rank");
        AffineWeylElement r;
        r.perm_ = x.perm_ * y.perm_;
        for (int i = 1; i <= x.rank(); ++i)
            r.lam_[i - 1] = x.lam_[i - 1] + y.lam_[x.perm_.inverse()(i) - 1];
        return r;
    }

    friend bool operator==(const AffineWeylElement& a, const AffineWeylElement& b)
    {
        if (!(a.perm_ == b.perm_))
            return false;
        for (int i = 0; i < a.rank(); ++i)
            if (a.lam_[i] != b.lam_[i])
                return false;
        return true;
    }

    /// Lexicographic on (lam, perm); used for canonical sorted sets.
    friend std::strong_ordering operator<=>(const AffineWeylElement& a, const AffineWeylElement& b)
    {
        if (auto c = a.rank() <=> b.rank(); c != 0)
            return c;
        for (int i = 0; i < a.rank(); ++i)
            if (auto c = a.lam_[i] <=> b.lam_[i]; c != 0)
                return c;
        return a.perm_ <=> b.perm_;
    }

    std::size_t hash() const
    {
        std::size_t hv = perm_.hash();
        for (int i = 0; i < rank(); ++i)
            hv = hv * 1000003u + static_cast<std::size_t>(lam_[i] + 64);
        return hv;
    }

    /// CLI syntax "perm=[2,1];lam=(0,1)".
    std::string to_string() const
    {
        std::string s = "perm=" + perm_.to_string() + ";lam=(";
        for (int i = 0; i < rank(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(lam_[i]);
        }
        return s + ")";
    }

private:
    std::array<int, kMaxRank> lam_{};
    Permutation perm_;
};

/**
 * Length for the standard Iwahori subgroup (preimage of the upper triangular
 * Borel). It equals log_q [I : I cap x I x^{-1}], computed root by root: the
 * root subgroup at (i, j) contributes the difference of the valuation bounds
 * of I and x I x^{-1} at that entry.
 */
inline int length(const AffineWeylElement& x)
{
    const int h = x.rank();
    Permutation inv = x.perm().inverse();
    int total = 0;
    for (int i = 1; i <= h; ++i) {
        for (int j = 1; j <= h; ++j) {
            if (i == j)
                continue;
            int bound_conj = (inv(i) > inv(j) ? 1 : 0) + x.lam(i) - x.lam(j);
            int bound_std = i > j ? 1 : 0;
            if (bound_conj > bound_std)
                total += bound_conj - bound_std;
        }
    }
    return total;
}

/**
 * The length-zero element with v(det) = 1: e_1 -> eps e_h and e_j -> e_{j-1}.
 * Conjugation by it shifts the simple affine reflections down by one index:
 * omega s_i omega^{-1} = s_{i-1 mod h}.
 */
inline AffineWeylElement omega(int h)
{
    std::vector<int> img(static_cast<std::size_t>(h));
    for (int j = 1; j <= h; ++j)
        img[j - 1] = j == 1 ? h : j - 1;
    std::vector<int> lam(static_cast<std::size_t>(h), 0);
    lam[h - 1] = 1;
    return AffineWeylElement(lam, Permutation(img));
}

inline AffineWeylElement omega_power(int h, int k)
{
    AffineWeylElement base = k >= 0 ? omega(h) : omega(h).inverse();
    AffineWeylElement r = AffineWeylElement::identity(h);
    for (int n = 0; n < (k >= 0 ? k : -k); ++n)
        r = r * base;
    return r;
}

/// s_1..s_{h-1} are the finite simple reflections; s_0 = omega s_1 omega^{-1}
/// is the affine one (e_1 <-> eps^{-1} e_h).
inline AffineWeylElement simple_affine(int h, int i)
{
    detail::require(h >= 2 && i >= 0 && i < h, "simple affine reflection index out of range");
    if (i > 0)
        return AffineWeylElement::from_perm(Permutation::simple(h, i));
    return omega(h) * simple_affine(h, 1) * omega(h).inverse();
}

/// Coxeter presentation data of the extended affine Weyl group of GL_h.
struct AffineGenerators {
    int h = 0;
    std::vector<AffineWeylElement> simple; ///< s_0, ..., s_{h-1} (empty for h = 1)
    AffineWeylElement omega;

    static AffineGenerators of(int h)
    {
        AffineGenerators g;
        g.h = h;
        if (h >= 2)
            for (int i = 0; i < h; ++i)
                g.simple.push_back(simple_affine(h, i));
        g.omega = pkern::omega(h);
        return g;
    }
};

/// x = omega^k * s_{word[0]} * ... * s_{word.back()} with word.size() = length(x).
struct ReducedDecomposition {
    int omega_power = 0;
    std::vector<int> word;
};

/**
 * Greedy right descent: strip s_i from the right while that shortens x. The
 * remaining length-zero element must be a power of omega; anything else means
 * the length function and the generators disagree.
 */
inline ReducedDecomposition reduced_decomposition(const AffineWeylElement& x)
{
    const int h = x.rank();
    AffineGenerators gens = AffineGenerators::of(h);
    AffineWeylElement cur = x;
    int len = length(cur);
    std::vector<int> stripped;
    while (len > 0) {
        bool found = false;
        for (int i = 0; i < h && !found; ++i) {
            AffineWeylElement next = cur * gens.simple[i];
            int nl = length(next);
            if (nl < len) {
                detail::ensure(nl == len - 1, "length dropped by more than one under a simple reflection");
                cur = next;
                len = nl;
                stripped.push_back(i);
                found = true;
            }
        }
        detail::ensure(found, "no right descent for an element of positive length");
    }
    int k = cur.det_valuation();
    detail::ensure(cur == omega_power(h, k), "residual not an omega-power");
    ReducedDecomposition r;
    r.omega_power = k;
    r.word.assign(stripped.rbegin(), stripped.rend());
    return r;
}

inline AffineWeylElement from_decomposition(int h, const ReducedDecomposition& d)
{
    AffineWeylElement r = omega_power(h, d.omega_power);
    for (int i : d.word)
        r = r * simple_affine(h, i);
    return r;
}

/// x lies in W eps^mu W for mu = (1^d, 0^{h-d}): every exponent is 0 or 1 and
/// exactly d of them are 1.
inline bool in_minuscule_double_coset(const AffineWeylElement& x, int h, int d)
{
    if (x.rank() != h || d < 0 || d > h)
        return false;
    int ones = 0;
    for (int i = 1; i <= h; ++i) {
        int e = x.lam(i);
        if (e != 0 && e != 1)
            return false;
        ones += e;
    }
    return ones == d;
}

} // namespace pkern

template <>
struct std::hash<pkern::AffineWeylElement> {
    std::size_t operator()(const pkern::AffineWeylElement& x) const noexcept { return x.hash(); }
};
