#pragma once

#include "pkern/error.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pkern {

/// Largest rank supported by the fixed-capacity value types. Enumerations over
/// S_h become infeasible long before this bound matters.
inline constexpr int kMaxRank = 12;

/**
 * Element of the symmetric group S_h in one-line notation, 1-indexed.
 *
 * The associated permutation matrix has (P_u)_{u(j), j} = 1, so that
 * P_{u v} = P_u P_v for the composition (u v)(j) = u(v(j)).
 */
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::span<const int> images)
    {
        detail::require(images.size() <= static_cast<std::size_t>(kMaxRank),
                        "permutation degree exceeds kMaxRank");
        degree_ = static_cast<std::uint8_t>(images.size());
        std::array<bool, kMaxRank + 1> seen{};
        for (std::size_t j = 0; j < images.size(); ++j) {
            int v = images[j];
            detail::require(v >= 1 && v <= degree_ && !seen[v],
                            "not a permutation of 1..h in one-line notation");
            seen[v] = true;
            img_[j] = static_cast<std::uint8_t>(v);
        }
    }

    Permutation(std::initializer_list<int> images)
        : Permutation(std::span<const int>(images.begin(), images.size()))
    {
    }

    explicit Permutation(const std::vector<int>& images)
        : Permutation(std::span<const int>(images))
    {
    }

    static Permutation identity(int h)
    {
        std::vector<int> v(static_cast<std::size_t>(h));
        std::iota(v.begin(), v.end(), 1);
        return Permutation(v);
    }

    /// The simple transposition (i, i+1), 1 <= i < h.
    static Permutation simple(int h, int i)
    {
        detail::require(i >= 1 && i < h, "simple reflection index out of range");
        Permutation p = identity(h);
        std::swap(p.img_[i - 1], p.img_[i]);
        return p;
    }

    int degree() const { return degree_; }

    /// Image of j (1-based).
    int operator()(int j) const { return img_[j - 1]; }

    std::vector<int> images() const { return {img_.begin(), img_.begin() + degree_}; }

    Permutation inverse() const
    {
        Permutation r;
        r.degree_ = degree_;
        for (int j = 0; j < degree_; ++j)
            r.img_[img_[j] - 1] = static_cast<std::uint8_t>(j + 1);
        return r;
    }

    bool is_identity() const
    {
        for (int j = 0; j < degree_; ++j)
            if (img_[j] != j + 1)
                return false;
        return true;
    }

    friend Permutation operator*(const Permutation& u, const Permutation& v)
    {
        detail::require(u.degree_ == v.degree_, "permutation degree mismatch");
        Permutation r;
        r.degree_ = u.degree_;
        for (int j = 0; j < u.degree_; ++j)
            r.img_[j] = u.img_[v.img_[j] - 1];
        return r;
    }

    friend bool operator==(const Permutation& a, const Permutation& b)
    {
        return a.degree_ == b.degree_ &&
               std::equal(a.img_.begin(), a.img_.begin() + a.degree_, b.img_.begin());
    }

    /// Lexicographic on one-line notation (degree first).
    friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b)
    {
        if (auto c = a.degree_ <=> b.degree_; c != 0)
            return c;
        for (int j = 0; j < a.degree_; ++j)
            if (auto c = a.img_[j] <=> b.img_[j]; c != 0)
                return c;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const
    {
        std::size_t hv = degree_;
        for (int j = 0; j < degree_; ++j)
            hv = hv * 31 + img_[j];
        return hv;
    }

    /// "[2,1,3]"
    std::string to_string() const
    {
        std::string s = "[";
        for (int j = 0; j < degree_; ++j) {
            if (j)
                s += ',';
            s += std::to_string(img_[j]);
        }
        return s + "]";
    }

private:
    std::uint8_t degree_ = 0;
    std::array<std::uint8_t, kMaxRank> img_{};
};

inline Permutation compose(const Permutation& u, const Permutation& v) { return u * v; }

/// Number of inversions, i.e. the Coxeter length for the generators (i, i+1).
inline int finite_length(const Permutation& w)
{
    int n = 0;
    for (int i = 1; i <= w.degree(); ++i)
        for (int j = i + 1; j <= w.degree(); ++j)
            if (w(i) > w(j))
                ++n;
    return n;
}

/// Subset of the simple reflections; i stands for (i, i+1).
using SimpleSubset = std::set<int>;

inline SimpleSubset all_simple(int h)
{
    SimpleSubset s;
    for (int i = 1; i < h; ++i)
        s.insert(i);
    return s;
}

/// Longest element of the parabolic subgroup W_J generated by J: reverses
/// every maximal run of consecutive indices connected by reflections in J.
inline Permutation longest_element(int h, const SimpleSubset& J)
{
    for (int i : J)
        detail::require(i >= 1 && i < h, "reflection (i,i+1) not in S");
    std::vector<int> img(static_cast<std::size_t>(h));
    int start = 1;
    while (start <= h) {
        int end = start;
        while (end < h && J.count(end))
            ++end;
        for (int k = start; k <= end; ++k)
            img[k - 1] = start + end - k;
        start = end + 1;
    }
    return Permutation(img);
}

/// w has minimal length in W_J w iff w^{-1}(i) < w^{-1}(i+1) for every i in J.
inline bool is_left_reduced(const Permutation& w, const SimpleSubset& J)
{
    Permutation inv = w.inverse();
    for (int i : J)
        if (inv(i) > inv(i + 1))
            return false;
    return true;
}

/// All permutations of degree h in lexicographic order.
inline std::vector<Permutation> all_permutations(int h)
{
    std::vector<int> img(static_cast<std::size_t>(h));
    std::iota(img.begin(), img.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

/// The left-reduced elements ^J W, lexicographically ordered.
inline std::vector<Permutation> min_coset_reps(int h, const SimpleSubset& J)
{
    std::vector<Permutation> out;
    for (const auto& w : all_permutations(h))
        if (is_left_reduced(w, J))
            out.push_back(w);
    return out;
}

} // namespace pkern

template <>
struct std::hash<pkern::Permutation> {
    std::size_t operator()(const pkern::Permutation& p) const noexcept { return p.hash(); }
};
