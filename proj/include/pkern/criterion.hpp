#pragma once

#include "pkern/affine_weyl.hpp"
#include "pkern/coset_calculus.hpp"
#include "pkern/error.hpp"
#include "pkern/permutation.hpp"
#include "pkern/polygons.hpp"
#include "pkern/semimodules.hpp"
#include "pkern/version.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace pkern {

/// Which element sits between the two y-cosets in the sandwich test.
enum class Orientation {
    z_in_middle,      ///< x_w in IyI z Iy^{-1}I (as the theorem is written)
    target_in_middle, ///< z in IyI x_w Iy^{-1}I
};

inline const char* to_string(Orientation o)
{
    return o == Orientation::z_in_middle ? "z_in_middle" : "target_in_middle";
}

inline Orientation orientation_from_string(const std::string& s)
{
    if (s == "z_in_middle")
        return Orientation::z_in_middle;
    if (s == "target_in_middle")
        return Orientation::target_in_middle;
    throw ValidationError("unknown orientation: " + s);
}

/// The convention choices the criterion depends on.
struct ConventionManifest {
    FoldRule rule = FoldRule::full_support;
    Orientation orientation = Orientation::z_in_middle;
    EtaOrder eta = EtaOrder::degree_descending;
    bool mirror = false; ///< evaluate on the dual (d <-> h-d) data instead
    std::string source = "builtin";

    bool same_variant(const ConventionManifest& o) const
    {
        return rule == o.rule && orientation == o.orientation && eta == o.eta && mirror == o.mirror;
    }

    std::string label() const
    {
        return std::string(to_string(rule)) + "/" + to_string(orientation) + "/" + to_string(eta) +
               (mirror ? "/mirror" : "");
    }

    /// The theorem read literally: full products, z in the middle, eta sorting
    /// lam ascending.
    static ConventionManifest paper_literal()
    {
        ConventionManifest m;
        m.eta = EtaOrder::ascending;
        m.source = "paper_literal";
        return m;
    }

    /// The variant selected by calibrate() on the default probes; kept in
    /// sync by a test.
    static ConventionManifest calibrated_default()
    {
        ConventionManifest m;
        m.eta = EtaOrder::degree_descending;
        m.source = "builtin";
        return m;
    }

    /// Every combination of choices, in a fixed order.
    static std::vector<ConventionManifest> all_variants()
    {
        std::vector<ConventionManifest> out;
        for (bool mirror : {false, true})
            for (FoldRule rule : {FoldRule::full_support, FoldRule::demazure_max})
                for (Orientation o : {Orientation::z_in_middle, Orientation::target_in_middle})
                    for (EtaOrder e : {EtaOrder::ascending, EtaOrder::ascending_inverse, EtaOrder::degree_descending}) {
                        ConventionManifest m;
                        m.rule = rule;
                        m.orientation = o;
                        m.eta = e;
                        m.mirror = mirror;
                        m.source = "variant";
                        out.push_back(m);
                    }
        return out;
    }
};

/// Caps applied by the criterion and the CLI.
struct ResourceLimits {
    int max_height = 6;
    std::size_t max_support = 200000;
    double seconds_per_cell = 60.0;
};

/// Dual data: the module with F and V exchanged has matrix eps x^{-1}
/// transposed; conjugation by w_0 restores the upper triangular Iwahori.
inline AffineWeylElement dual_element(const AffineWeylElement& x)
{
    const int h = x.rank();
    AffineWeylElement inv = x.inverse();
    std::vector<int> lam(static_cast<std::size_t>(h));
    for (int i = 1; i <= h; ++i)
        lam[i - 1] = inv.lam(inv.perm()(i)) + 1;
    AffineWeylElement tr(lam, inv.perm().inverse());
    AffineWeylElement w0 = AffineWeylElement::from_perm(longest_element(h, all_simple(h)));
    return w0 * tr * w0;
}

inline NewtonPolygon dual_polygon(const NewtonPolygon& P)
{
    std::vector<SlopeBlock> b;
    for (const auto& blk : P.blocks())
        b.push_back({blk.m, blk.n});
    return NewtonPolygon(std::move(b));
}

/// Certificate for a true cell.
struct Witness {
    CocharacterProfile profile;
    Permutation y;
    AffineWeylElement middle; ///< eta^{-1} eps^{-lam} x_P eps^{lam} eta
    AffineWeylElement target; ///< the element tested against the sandwich
    std::size_t support_size = 0;
};

struct CellResult {
    bool value = false;
    std::optional<Witness> witness;
    std::size_t profiles_searched = 0;
    std::size_t pairs_searched = 0; ///< (lam, y) pairs examined
};

struct IncidenceTable {
    HodgeDatum hodge;
    std::vector<Permutation> rows;
    std::vector<NewtonPolygon> cols;
    std::vector<std::vector<CellResult>> cells; ///< cells[row][col]
    ConventionManifest manifest;
    std::string version = kVersion;

    bool value(std::size_t r, std::size_t c) const { return cells[r][c].value; }
};

/// One step of a sandwich computation: the support after conjugating by s_letter.
struct SupportStep {
    int letter = 0;
    std::size_t size = 0;
};

/// Recomputes the support chain of a witness: starting from the inner element,
/// I s_i I . S . I s_i I for the letters of y from the innermost outwards.
inline std::vector<SupportStep> witness_chain(const Witness& w, const ConventionManifest& m)
{
    bool z_mid = m.orientation == Orientation::z_in_middle;
    const AffineWeylElement& inner = z_mid ? w.middle : w.target;
    const AffineWeylElement& probe = z_mid ? w.target : w.middle;
    std::vector<int> word = reduced_decomposition(AffineWeylElement::from_perm(w.y)).word;
    CosetSet S({inner});
    std::vector<SupportStep> chain{{0, S.size()}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        S = fold_simple(fold_simple_left(S, *it, m.rule), *it, m.rule);
        chain.push_back({*it, S.size()});
    }
    detail::ensure(S.contains(probe), "witness does not reproduce");
    return chain;
}

/// Decision procedures with a shared sandwich cache.
class Criterion {
public:
    explicit Criterion(ResourceLimits limits = {}) : limits_(limits) {}

    const ResourceLimits& limits() const { return limits_; }

    /// Exists lam in X_*(T)^P and y in W with the sandwich condition.
    CellResult search(const AffineWeylElement& target, const NewtonPolygon& P, const ConventionManifest& m)
    {
        AffineWeylElement x = target;
        NewtonPolygon Q = P;
        if (m.mirror) {
            x = dual_element(target);
            Q = dual_polygon(P);
        }
        detail::require(x.rank() == Q.height(), "element and polygon have different heights");
        guard_height(Q.height());
        auto start = std::chrono::steady_clock::now();
        CellResult res;
        const SandwichFamily* outer = nullptr;
        if (m.orientation == Orientation::target_in_middle)
            outer = &checked(cache_.get(x, m.rule));
        for (const auto& prof : enumerate_profiles(Q)) {
            ++res.profiles_searched;
            AffineWeylElement z = middle_element(prof, Q, m.eta);
            const SandwichFamily& fam = outer ? *outer : checked(cache_.get(z, m.rule));
            const AffineWeylElement& probe = outer ? z : x;
            for (std::size_t k = 0; k < fam.ys.size(); ++k) {
                ++res.pairs_searched;
                if (fam.supports[k].contains(probe)) {
                    res.value = true;
                    res.witness = Witness{prof, fam.ys[k], z, x, fam.supports[k].size()};
                    return res;
                }
            }
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (secs > limits_.seconds_per_cell)
                throw ResourceError("time limit per cell exceeded");
        }
        return res;
    }

    /// Theorem condition (iv) for the EO type w and polygon P.
    CellResult lifts_to(const HodgeDatum& hd, const Permutation& w, const NewtonPolygon& P, const ConventionManifest& m)
    {
        detail::require(P.height() == hd.h && P.rise() == hd.d, "polygon endpoint differs from (h, d)");
        return search(eo_representative(hd, w), P, m);
    }

    /// Non-emptiness of X_x(b) for b with Newton polygon P.
    CellResult adlv_nonempty(const AffineWeylElement& x, const NewtonPolygon& P, const ConventionManifest& m)
    {
        detail::require(in_minuscule_double_coset(x, P.height(), P.rise()),
                        "x is not in W eps^mu W for the Hodge datum of P");
        return search(x, P, m);
    }

    IncidenceTable incidence_table(const HodgeDatum& hd, const ConventionManifest& m)
    {
        guard_height(hd.h);
        IncidenceTable t;
        t.hodge = hd;
        t.rows = eo_types(hd);
        t.cols = enumerate_polygons(hd);
        t.manifest = m;
        for (const auto& w : t.rows) {
            std::vector<CellResult> row;
            for (const auto& P : t.cols)
                row.push_back(lifts_to(hd, w, P, m));
            t.cells.push_back(std::move(row));
        }
        return t;
    }

    void clear_cache() { cache_.clear(); }

private:
    void guard_height(int h) const
    {
        if (h > limits_.max_height)
            throw ResourceError("height " + std::to_string(h) + " exceeds the configured maximum " +
                                std::to_string(limits_.max_height));
    }

    const SandwichFamily& checked(const SandwichFamily& fam) const
    {
        for (const auto& s : fam.supports)
            if (s.size() > limits_.max_support)
                throw ResourceError("coset support exceeds the configured maximum size");
        return fam;
    }

    ResourceLimits limits_;
    SandwichCache cache_;
};

} // namespace pkern
