#pragma once

#include "pkern/affine_weyl.hpp"
#include "pkern/error.hpp"
#include "pkern/permutation.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace pkern {

/// How the product of two Iwahori double cosets is modelled.
enum class FoldRule {
    full_support, ///< every double coset contained in IxI * IyI
    demazure_max, ///< only the Demazure (monoid) product
};

inline const char* to_string(FoldRule r)
{
    return r == FoldRule::full_support ? "full_support" : "demazure_max";
}

inline FoldRule fold_rule_from_string(const std::string& s)
{
    if (s == "full_support")
        return FoldRule::full_support;
    if (s == "demazure_max")
        return FoldRule::demazure_max;
    throw ValidationError("unknown fold rule: " + s);
}

/// Finite set of Iwahori double cosets, kept sorted and duplicate free.
class CosetSet {
public:
    CosetSet() = default;
    explicit CosetSet(std::vector<AffineWeylElement> elems) : elems_(std::move(elems)) { normalize(); }
    CosetSet(std::initializer_list<AffineWeylElement> elems) : elems_(elems) { normalize(); }

    const std::vector<AffineWeylElement>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool contains(const AffineWeylElement& x) const
    {
        return std::binary_search(elems_.begin(), elems_.end(), x);
    }

    bool is_subset_of(const CosetSet& other) const
    {
        return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
    }

    friend bool operator==(const CosetSet&, const CosetSet&) = default;

private:
    void normalize()
    {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    std::vector<AffineWeylElement> elems_;
};

namespace detail {

template <class Mul>
CosetSet fold_with(const CosetSet& S, const AffineWeylElement& s, FoldRule rule, Mul mul)
{
    std::vector<AffineWeylElement> out;
    out.reserve(S.size() * 2);
    for (const auto& x : S) {
        AffineWeylElement xs = mul(x, s);
        if (length(xs) > length(x)) {
            out.push_back(xs);
        } else if (rule == FoldRule::full_support) {
            out.push_back(xs);
            out.push_back(x);
        } else {
            out.push_back(x);
        }
    }
    return CosetSet(std::move(out));
}

} // namespace detail

/// Support of S * I s_i I (right multiplication by the simple double coset).
inline CosetSet fold_simple(const CosetSet& S, int i, FoldRule rule = FoldRule::full_support)
{
    if (S.empty())
        return S;
    AffineWeylElement s = simple_affine(S.begin()->rank(), i);
    return detail::fold_with(S, s, rule,
                             [](const AffineWeylElement& a, const AffineWeylElement& b) { return a * b; });
}

/// Support of I s_i I * S.
inline CosetSet fold_simple_left(const CosetSet& S, int i, FoldRule rule = FoldRule::full_support)
{
    if (S.empty())
        return S;
    AffineWeylElement s = simple_affine(S.begin()->rank(), i);
    return detail::fold_with(S, s, rule,
                             [](const AffineWeylElement& a, const AffineWeylElement& b) { return b * a; });
}

/**
 * Support of IxI * IyI. Writing y = omega^k s_{i_1} ... s_{i_l}, the coset of
 * omega^k is a single Iwahori coset normalizing I, so the fold starts from
 * x omega^k and then absorbs the simple reflections one at a time.
 */
inline CosetSet coset_product_support(const AffineWeylElement& x, const AffineWeylElement& y,
                                      FoldRule rule = FoldRule::full_support)
{
    detail::require(x.rank() == y.rank(), "coset product of elements of different rank");
    ReducedDecomposition dec = reduced_decomposition(y);
    CosetSet S{x * omega_power(x.rank(), dec.omega_power)};
    for (int i : dec.word)
        S = fold_simple(S, i, rule);
    return S;
}

/// Support of IxI * S for a set S (union over S).
inline CosetSet coset_product_support(const AffineWeylElement& x, const CosetSet& S, FoldRule rule)
{
    std::vector<AffineWeylElement> out;
    for (const auto& y : S) {
        CosetSet part = coset_product_support(x, y, rule);
        out.insert(out.end(), part.begin(), part.end());
    }
    return CosetSet(std::move(out));
}

/// Support of S * IyI for a set S.
inline CosetSet coset_product_support(const CosetSet& S, const AffineWeylElement& y, FoldRule rule)
{
    std::vector<AffineWeylElement> out;
    for (const auto& x : S) {
        CosetSet part = coset_product_support(x, y, rule);
        out.insert(out.end(), part.begin(), part.end());
    }
    return CosetSet(std::move(out));
}

/// Support of IyI * IzI * Iy^{-1}I for y in the finite Weyl group.
inline CosetSet sandwich_support(const Permutation& y, const AffineWeylElement& z, FoldRule rule)
{
    AffineWeylElement ye = AffineWeylElement::from_perm(y);
    return coset_product_support(coset_product_support(ye, z, rule), ye.inverse(), rule);
}

/// I target I is contained in IyI * IzI * Iy^{-1}I.
inline bool sandwich_contains(const AffineWeylElement& target, const Permutation& y,
                              const AffineWeylElement& z, FoldRule rule = FoldRule::full_support)
{
    detail::require(target.rank() == z.rank() && y.degree() == z.rank(),
                    "sandwich arguments of different rank");
    return sandwich_support(y, z, rule).contains(target);
}

/**
 * All sandwiches IyI z Iy^{-1}I for y running over the finite Weyl group,
 * built breadth first along y = s y' (l(y) = l(y') + 1), so that each set is
 * obtained from its predecessor by one left and one right fold. Entries are
 * ordered by (finite length of y, y lexicographic).
 */
struct SandwichFamily {
    std::vector<Permutation> ys;
    std::vector<CosetSet> supports;
};

inline SandwichFamily all_sandwiches(const AffineWeylElement& z, FoldRule rule)
{
    const int h = z.rank();
    std::vector<Permutation> perms = all_permutations(h);
    std::stable_sort(perms.begin(), perms.end(), [](const Permutation& a, const Permutation& b) {
        return finite_length(a) < finite_length(b);
    });
    std::unordered_map<Permutation, std::size_t> index;
    SandwichFamily fam;
    fam.ys.reserve(perms.size());
    fam.supports.reserve(perms.size());
    for (const auto& y : perms) {
        CosetSet S;
        if (y.is_identity()) {
            S = CosetSet{z};
        } else {
            bool done = false;
            for (int i = 1; i < h && !done; ++i) {
                Permutation prev = Permutation::simple(h, i) * y;
                if (finite_length(prev) < finite_length(y)) {
                    S = fold_simple(fold_simple_left(fam.supports[index.at(prev)], i, rule), i, rule);
                    done = true;
                }
            }
            detail::ensure(done, "no left descent for a nontrivial permutation");
        }
        index.emplace(y, fam.ys.size());
        fam.ys.push_back(y);
        fam.supports.push_back(std::move(S));
    }
    return fam;
}

/// Thread-safe memo of sandwich families keyed by (z, rule).
class SandwichCache {
public:
    const SandwichFamily& get(const AffineWeylElement& z, FoldRule rule)
    {
        Key key{z, rule};
        {
            std::shared_lock lock(mutex_);
            auto it = map_.find(key);
            if (it != map_.end())
                return it->second;
        }
        SandwichFamily fam = all_sandwiches(z, rule);
        std::unique_lock lock(mutex_);
        return map_.try_emplace(key, std::move(fam)).first->second;
    }

    void clear()
    {
        std::unique_lock lock(mutex_);
        map_.clear();
    }

private:
    struct Key {
        AffineWeylElement z;
        FoldRule rule;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return k.z.hash() * 2 + static_cast<std::size_t>(k.rule); }
    };

    std::shared_mutex mutex_;
    std::unordered_map<Key, SandwichFamily, KeyHash> map_;
};

} // namespace pkern
