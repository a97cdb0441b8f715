#pragma once

#include "pkern/error.hpp"
#include "pkern/lab/bt1.hpp"
#include "pkern/lab/shtuka.hpp"
#include "pkern/polygons.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace pkern::lab {

/// Reference modules Z_w = bt1_of(w w_0 w_{0,I} eps^mu) for one (h, d) and field.
struct EoReferences {
    HodgeDatum hd;
    std::vector<Permutation> types;
    std::vector<Bt1Module> modules;
    std::vector<std::vector<std::array<int, 3>>> signatures;
    bool deep = false; ///< canonical signatures collided, deep signatures in use
    std::vector<std::vector<std::array<int, 5>>> deep_signatures;
};

inline EoReferences build_eo_references(const HodgeDatum& hd, const GaloisField& F)
{
    EoReferences ref;
    ref.hd = hd;
    ref.types = eo_types(hd);
    for (const auto& w : ref.types) {
        Bt1Module Z = bt1_of(shtuka_of_element(eo_representative(hd, w), F));
        ref.signatures.push_back(canonical_filtration(Z).signature);
        ref.modules.push_back(std::move(Z));
    }
    std::set<std::vector<std::array<int, 3>>> distinct(ref.signatures.begin(), ref.signatures.end());
    if (distinct.size() != ref.signatures.size()) {
        ref.deep = true;
        for (const auto& Z : ref.modules)
            ref.deep_signatures.push_back(deep_signature(Z));
        std::set<std::vector<std::array<int, 5>>> d2(ref.deep_signatures.begin(), ref.deep_signatures.end());
        pkern::detail::ensure(d2.size() == ref.deep_signatures.size(),
                       "reference BT1 modules are not pairwise distinguishable");
    }
    return ref;
}

/// Per-(h, d, p, r) cache of reference modules.
inline const EoReferences& eo_references(const HodgeDatum& hd, const GaloisField& F)
{
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::unique_ptr<EoReferences>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{hd.h, hd.d, F.characteristic(), F.degree()}];
    if (!slot)
        slot = std::make_unique<EoReferences>(build_eo_references(hd, F));
    return *slot;
}

/// The left-reduced w with Z isomorphic to Z_w.
inline Permutation eo_classify(const Bt1Module& Z, const HodgeDatum& hd)
{
    pkern::detail::require(Z.h == hd.h, "BT1 module has the wrong rank");
    pkern::detail::require(Z.dim_d() == hd.d, "BT1 module has the wrong numerical type");
    const EoReferences& ref = eo_references(hd, *Z.field);
    int match = -1;
    if (!ref.deep) {
        auto sig = canonical_filtration(Z).signature;
        for (std::size_t k = 0; k < ref.types.size(); ++k)
            if (ref.signatures[k] == sig) {
                pkern::detail::ensure(match < 0, "ambiguous EO classification");
                match = static_cast<int>(k);
            }
    } else {
        auto sig = deep_signature(Z);
        for (std::size_t k = 0; k < ref.types.size(); ++k)
            if (ref.deep_signatures[k] == sig) {
                pkern::detail::ensure(match < 0, "ambiguous EO classification");
                match = static_cast<int>(k);
            }
    }
    pkern::detail::ensure(match >= 0, "BT1 module matches no reference EO type");
    return ref.types[match];
}

} // namespace pkern::lab
