#pragma once

#include "pkern/error.hpp"
#include "pkern/field/galois_field.hpp"
#include "pkern/field/linear_algebra.hpp"
#include "pkern/semimodules.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pkern::lab {

using field::Elem;
using field::FqMatrix;
using field::GaloisField;
using field::Subspace;
using field::Vec;

/**
 * 1-truncated Dieudonne module on F^h: F(x) = MF sigma(x) and
 * V(x) = MV sigma^{-1}(x), sigma the coordinatewise Frobenius.
 */
struct Bt1Module {
    const GaloisField* field = nullptr;
    int h = 0;
    FqMatrix MF;
    FqMatrix MV;

    Bt1Module() = default;
    Bt1Module(const GaloisField& F, FqMatrix mf, FqMatrix mv)
        : field(&F), h(mf.rows()), MF(std::move(mf)), MV(std::move(mv))
    {
        pkern::detail::require(MF.rows() == h && MF.cols() == h && MV.rows() == h && MV.cols() == h,
                        "BT1 matrices must be square of the same size");
    }

    Vec apply_F(Vec v) const
    {
        for (auto& a : v)
            a = field->frob(a);
        return MF.apply(v);
    }

    Vec apply_V(Vec v) const
    {
        for (auto& a : v)
            a = field->frob_inv(a);
        return MV.apply(v);
    }

    Subspace F_image(const Subspace& U) const { return field::image(MF, field::frob(U, 1)); }
    Subspace V_image(const Subspace& U) const { return field::image(MV, field::frob(U, -1)); }
    Subspace F_preimage(const Subspace& U) const { return field::frob(field::preimage(MF, U), -1); }
    Subspace V_preimage(const Subspace& U) const { return field::frob(field::preimage(MV, U), 1); }

    Subspace zero() const { return Subspace(*field, h); }
    Subspace whole() const { return Subspace::whole(*field, h); }

    /// rank F = h - d.
    int dim_d() const { return h - field::rank(MF); }

    /// Im F = ker V and Im V = ker F.
    bool is_valid() const
    {
        Subspace W = whole();
        return F_image(W) == V_preimage(zero()) && V_image(W) == F_preimage(zero());
    }

    bool operator==(const Bt1Module& o) const { return h == o.h && MF == o.MF && MV == o.MV; }
};

/// Module Z_C with its grading: basis e_j (j in C ascending), F e_j = e_{j+n}
/// when j+n in C and F e_j = 0 otherwise, V e_{j-m} = e_j in the latter case.
struct GradedBt1 {
    Bt1Module module;
    std::vector<int> degrees; ///< degree of the k-th basis vector
};

inline GradedBt1 graded_bt1_from_beginning(const SemimoduleBeginning& b, const GaloisField& F)
{
    pkern::detail::require(is_beginning(b), "not a semimodule beginning");
    std::vector<int> deg(b.C.begin(), b.C.end());
    const int h = static_cast<int>(deg.size());
    auto pos = [&](int j) { return static_cast<int>(std::lower_bound(deg.begin(), deg.end(), j) - deg.begin()); };
    FqMatrix MF(F, h, h), MV(F, h, h);
    for (int j : deg) {
        if (b.C.count(j + b.n))
            MF(pos(j + b.n), pos(j)) = 1;
        else
            MV(pos(j), pos(j - b.m)) = 1;
    }
    GradedBt1 g{Bt1Module(F, MF, MV), deg};
    pkern::detail::ensure(g.module.is_valid(), "Z_C violates Im F = ker V");
    return g;
}

/// Canonical flag with its combinatorial type.
struct CanonicalFlag {
    std::vector<Subspace> flag;                 ///< strictly increasing
    std::vector<std::array<int, 3>> signature; ///< (dim U, dim F U, dim V^{-1} U)
};

/**
 * Smallest set of subspaces containing 0 and Z, stable under U -> F(U) and
 * U -> V^{-1}(U). It is totally ordered by inclusion; failure of either
 * convergence or the chain property is reported as a convention error.
 */
inline CanonicalFlag canonical_filtration(const Bt1Module& Z)
{
    std::set<Subspace> seen{Z.zero(), Z.whole()};
    std::vector<Subspace> frontier(seen.begin(), seen.end());
    int rounds = 0;
    while (!frontier.empty()) {
        pkern::detail::ensure(++rounds <= 4 * Z.h + 4, "canonical filtration did not converge");
        std::vector<Subspace> next;
        for (const auto& U : frontier)
            for (const Subspace& W : {Z.F_image(U), Z.V_preimage(U)})
                if (seen.insert(W).second)
                    next.push_back(W);
        frontier = std::move(next);
    }
    CanonicalFlag cf;
    cf.flag.assign(seen.begin(), seen.end());
    for (std::size_t i = 1; i < cf.flag.size(); ++i)
        pkern::detail::ensure(cf.flag[i].dim() > cf.flag[i - 1].dim() && cf.flag[i].contains(cf.flag[i - 1]),
                       "canonical filtration is not a chain");
    for (const auto& U : cf.flag)
        cf.signature.push_back({U.dim(), Z.F_image(U).dim(), Z.V_preimage(U).dim()});
    return cf;
}

/// Closure under F, V^{-1}, V and F^{-1}, summarized as a sorted multiset of
/// dimension tuples. Used only when the canonical signature cannot separate
/// reference modules.
inline std::vector<std::array<int, 5>> deep_signature(const Bt1Module& Z)
{
    std::set<Subspace> seen{Z.zero(), Z.whole()};
    std::vector<Subspace> frontier(seen.begin(), seen.end());
    int rounds = 0;
    while (!frontier.empty()) {
        pkern::detail::ensure(++rounds <= Z.h * Z.h + 8, "deep closure did not converge");
        std::vector<Subspace> next;
        for (const auto& U : frontier)
            for (const Subspace& W : {Z.F_image(U), Z.V_preimage(U), Z.V_image(U), Z.F_preimage(U)})
                if (seen.insert(W).second)
                    next.push_back(W);
        frontier = std::move(next);
    }
    std::vector<std::array<int, 5>> sig;
    for (const auto& U : seen)
        sig.push_back({U.dim(), Z.F_image(U).dim(), Z.V_preimage(U).dim(), Z.V_image(U).dim(),
                       Z.F_preimage(U).dim()});
    std::sort(sig.begin(), sig.end());
    return sig;
}

} // namespace pkern::lab
