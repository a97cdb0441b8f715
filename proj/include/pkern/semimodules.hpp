#pragma once

#include "pkern/affine_weyl.hpp"
#include "pkern/error.hpp"
#include "pkern/permutation.hpp"
#include "pkern/polygons.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace pkern {

/// Finite set C of integers of type (n, m).
struct SemimoduleBeginning {
    std::set<int> C;
    int n = 0;
    int m = 1;

    int height() const { return n + m; }
    bool operator==(const SemimoduleBeginning&) const = default;
};

namespace detail {

inline int floor_mod(int a, int b)
{
    int r = a % b;
    return r < 0 ? r + b : r;
}

inline int floor_div(int a, int b) { return (a - floor_mod(a, b)) / b; }

} // namespace detail

/// One element per residue class mod n+m, and i+n or i-m in C for all i in C.
inline bool is_beginning(const std::set<int>& C, int n, int m)
{
    detail::require(n >= 0 && m >= 0 && n + m >= 1 && std::gcd(n, m) == 1, "type (n,m) must be coprime");
    const int h = n + m;
    if (static_cast<int>(C.size()) != h)
        return false;
    std::vector<bool> seen(static_cast<std::size_t>(h), false);
    for (int i : C) {
        int r = detail::floor_mod(i, h);
        if (seen[r])
            return false;
        seen[r] = true;
    }
    for (int i : C)
        if (!C.count(i + n) && !C.count(i - m))
            return false;
    return true;
}

inline bool is_beginning(const SemimoduleBeginning& b) { return is_beginning(b.C, b.n, b.m); }

/// eps^{-lam} x eps^{lam}.
inline AffineWeylElement conj_by_translation(const std::vector<int>& lam, const AffineWeylElement& x)
{
    AffineWeylElement t = AffineWeylElement::translation(lam);
    return t.inverse() * x * t;
}

/**
 * All lam with min lam = 0 and eps^{-lam} x_{n,m} eps^{lam} minuscule.
 *
 * The permutation of x_{n,m} is a single cycle j -> j-n mod h. Walking it from
 * j = 1, each step changes lam by 0 or -1 (exponent-0 column) or by 0 or +1
 * (exponent-1 column); the walk has to close up at j = 1.
 */
inline std::vector<std::vector<int>> enumerate_cochar_block(int n, int m)
{
    AffineWeylElement x = x_block(n, m);
    const int h = n + m;
    std::vector<int> lam(static_cast<std::size_t>(h), 0);
    std::set<std::vector<int>> found;
    auto rec = [&](auto&& self, int j, int steps) -> void {
        int next = x.perm()(j);
        bool up = x.column_exponent(j) == 1;
        for (int delta = 0; delta <= 1; ++delta) {
            int val = lam[j - 1] + (up ? delta : -delta);
            if (steps + 1 == h) {
                if (val != lam[0])
                    continue;
                std::vector<int> v = lam;
                int mn = *std::min_element(v.begin(), v.end());
                for (int& e : v)
                    e -= mn;
                found.insert(std::move(v));
            } else {
                lam[next - 1] = val;
                self(self, next, steps + 1);
            }
        }
    };
    rec(rec, 1, 0);
    std::vector<std::vector<int>> out(found.begin(), found.end());
    for (const auto& v : out)
        detail::ensure(in_minuscule_double_coset(conj_by_translation(v, x), h, n),
                       "enumerated cocharacter fails the exponent test");
    return out;
}

/// C -> lam with h+1-j+h lam_j in C.
inline std::vector<int> lambda_from_beginning(const SemimoduleBeginning& b)
{
    detail::require(is_beginning(b), "not a semimodule beginning");
    const int h = b.height();
    std::vector<int> lam(static_cast<std::size_t>(h));
    for (int c : b.C) {
        int j = detail::floor_mod(-c, h) + 1;
        lam[j - 1] = detail::floor_div(c - (h + 1 - j), h);
    }
    return lam;
}

/// lam -> C = {h+1-j+h lam_j}.
inline SemimoduleBeginning beginning_from_lambda(const std::vector<int>& lam, int n, int m)
{
    const int h = n + m;
    detail::require(static_cast<int>(lam.size()) == h, "cocharacter has the wrong length");
    SemimoduleBeginning b;
    b.n = n;
    b.m = m;
    for (int j = 1; j <= h; ++j)
        b.C.insert(h + 1 - j + h * lam[j - 1]);
    detail::require(is_beginning(b), "cocharacter does not give a semimodule beginning");
    return b;
}

/// lam in X_*(T)^P, normalized to min 0 on each block.
struct CocharacterProfile {
    std::vector<int> lam;
    std::vector<int> block_sizes;

    bool operator==(const CocharacterProfile&) const = default;
};

/// Cartesian product of the per-block enumerations; the first block varies
/// slowest.
inline std::vector<CocharacterProfile> enumerate_profiles(const NewtonPolygon& P)
{
    std::vector<std::vector<std::vector<int>>> per_block;
    for (const auto& b : P.blocks())
        per_block.push_back(enumerate_cochar_block(b.n, b.m));
    std::vector<CocharacterProfile> out;
    CocharacterProfile cur;
    cur.block_sizes = P.block_sizes();
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == per_block.size()) {
            out.push_back(cur);
            return;
        }
        for (const auto& v : per_block[k]) {
            std::size_t mark = cur.lam.size();
            cur.lam.insert(cur.lam.end(), v.begin(), v.end());
            self(self, k + 1);
            cur.lam.resize(mark);
        }
    };
    rec(rec, 0);
    return out;
}

/// Which block-preserving permutation is used to conjugate eps^{-lam} x_P eps^{lam}.
enum class EtaOrder {
    ascending,         ///< lam ascending within each block, stable
    ascending_inverse, ///< inverse of the above
    degree_descending, ///< filtration degree h_i+1-j+h_i lam_j descending within each block
};

inline const char* to_string(EtaOrder e)
{
    switch (e) {
    case EtaOrder::ascending:
        return "ascending";
    case EtaOrder::ascending_inverse:
        return "ascending_inverse";
    case EtaOrder::degree_descending:
        return "degree_descending";
    }
    return "?";
}

inline EtaOrder eta_order_from_string(const std::string& s)
{
    if (s == "ascending")
        return EtaOrder::ascending;
    if (s == "ascending_inverse")
        return EtaOrder::ascending_inverse;
    if (s == "degree_descending")
        return EtaOrder::degree_descending;
    throw ValidationError("unknown eta order: " + s);
}

inline Permutation eta_of(const CocharacterProfile& prof, EtaOrder order = EtaOrder::ascending)
{
    const int h = static_cast<int>(prof.lam.size());
    int total = std::accumulate(prof.block_sizes.begin(), prof.block_sizes.end(), 0);
    detail::require(total == h, "block sizes do not add up to the profile length");
    std::vector<int> img(static_cast<std::size_t>(h));
    int offset = 0;
    for (int hi : prof.block_sizes) {
        std::vector<int> idx(static_cast<std::size_t>(hi));
        std::iota(idx.begin(), idx.end(), 0);
        auto val = [&](int k) { return prof.lam[offset + k]; };
        if (order == EtaOrder::degree_descending) {
            auto deg = [&](int k) { return hi + 1 - (k + 1) + hi * val(k); };
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return deg(a) > deg(b); });
        } else {
            std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return val(a) < val(b); });
        }
        for (int k = 0; k < hi; ++k)
            img[offset + k] = offset + idx[k] + 1;
        offset += hi;
    }
    Permutation eta(img);
    return order == EtaOrder::ascending_inverse ? eta.inverse() : eta;
}

/// eta^{-1} eps^{-lam} x_P eps^{lam} eta.
inline AffineWeylElement middle_element(const CocharacterProfile& prof, const NewtonPolygon& P,
                                        EtaOrder order = EtaOrder::ascending)
{
    detail::require(prof.block_sizes == P.block_sizes(), "profile does not match the polygon's blocks");
    AffineWeylElement inner = conj_by_translation(prof.lam, x_of_polygon(P));
    detail::require(in_minuscule_double_coset(inner, P.height(), P.rise()),
                    "profile is not in X_*(T)^P (exponent test fails)");
    AffineWeylElement eta = AffineWeylElement::from_perm(eta_of(prof, order));
    return eta.inverse() * inner * eta;
}

} // namespace pkern
