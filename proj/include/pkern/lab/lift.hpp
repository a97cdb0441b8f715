#pragma once

#include "pkern/error.hpp"
#include "pkern/field/linear_algebra.hpp"
#include "pkern/lab/bt1.hpp"
#include "pkern/lab/shtuka.hpp"
#include "pkern/polygons.hpp"
#include "pkern/semimodules.hpp"

#include <string>
#include <vector>

namespace pkern::lab {

/**
 * A 1-truncated module with a compatible filtration of Newton polygon P,
 * presented through its structure constants.
 *
 * The basis f^i_j is indexed block by block (i ascending) and, inside a block,
 * by j in C_i descending; with this indexing (i', j') precedes (i, j) exactly
 * when its index is smaller.
 *
 *  - a[k] (k with j + n_i in C_i): F(f_k) = f_{(i, j+n_i)} + sum_l a[k][l] f_l,
 *    supported on indices l < index(i, j + n_i);
 *  - b[k] (k with j - m_i in C_i): f_k = V(f_{(i, j-m_i)}) + sum_l b[k][l] f_l,
 *    supported on indices l < k.
 *
 * The V-side constants of the construction are determined by FV = VF = eps:
 * c = -b and d = -a after re-indexing by the source element.
 */
struct FiltrationData {
    NewtonPolygon P;
    std::vector<SemimoduleBeginning> C;
    std::vector<Vec> a;
    std::vector<Vec> b;
};

/// Position of the basis element (i, j) and the inverse table.
class LiftBasis {
public:
    explicit LiftBasis(const FiltrationData& D)
    {
        pkern::detail::require(D.C.size() == D.P.num_blocks(), "one semimodule beginning per block is required");
        for (std::size_t i = 0; i < D.C.size(); ++i) {
            const auto& blk = D.P.blocks()[i];
            pkern::detail::require(D.C[i].n == blk.n && D.C[i].m == blk.m && is_beginning(D.C[i]),
                            "beginning does not match its block");
            offsets_.push_back(static_cast<int>(block_.size()));
            for (auto it = D.C[i].C.rbegin(); it != D.C[i].C.rend(); ++it) {
                block_.push_back(static_cast<int>(i));
                degree_.push_back(*it);
            }
        }
        offsets_.push_back(static_cast<int>(block_.size()));
    }

    int size() const { return static_cast<int>(block_.size()); }
    int block(int k) const { return block_[k]; }
    int degree(int k) const { return degree_[k]; }
    int block_begin(int i) const { return offsets_[i]; }
    int block_end(int i) const { return offsets_[i + 1]; }

    /// Index of (i, j), or -1 when j is not in C_i.
    int index(int i, int j) const
    {
        for (int k = offsets_[i]; k < offsets_[i + 1]; ++k)
            if (degree_[k] == j)
                return k;
        return -1;
    }

private:
    std::vector<int> block_, degree_, offsets_;
};

/// Role of a basis element with respect to F: (i, j + n) in C, else (i, j - m) in C.
inline bool is_f_type(const FiltrationData& D, const LiftBasis& B, int k)
{
    const auto& blk = D.P.blocks()[B.block(k)];
    return B.index(B.block(k), B.degree(k) + blk.n) >= 0;
}

/// Role with respect to V: (i, j + m) in C, else (i, j - n) in C.
inline bool is_v_source(const FiltrationData& D, const LiftBasis& B, int k)
{
    const auto& blk = D.P.blocks()[B.block(k)];
    return B.index(B.block(k), B.degree(k) + blk.m) >= 0;
}

/// Checks the support conditions on a and b; throws on violation.
inline void validate_filtration_data(const FiltrationData& D)
{
    LiftBasis B(D);
    const int h = B.size();
    pkern::detail::require(static_cast<int>(D.a.size()) == h && static_cast<int>(D.b.size()) == h,
                    "coefficient tables must have one entry per basis element");
    for (int k = 0; k < h; ++k) {
        const auto& blk = D.P.blocks()[B.block(k)];
        int i = B.block(k), j = B.degree(k);
        int bound_a = is_f_type(D, B, k) ? B.index(i, j + blk.n) : 0;
        int bound_b = is_f_type(D, B, k) ? 0 : k;
        for (auto [vec, bound] : {std::pair{&D.a[k], bound_a}, std::pair{&D.b[k], bound_b}}) {
            pkern::detail::require(vec->empty() || static_cast<int>(vec->size()) == h, "coefficient vector has the wrong size");
            for (int l = 0; l < static_cast<int>(vec->size()); ++l)
                pkern::detail::require((*vec)[l] == 0 || l < bound, "inconsistent coefficient index sets");
        }
    }
}

inline FiltrationData random_filtration_data(const NewtonPolygon& P, const GaloisField& F, Rng& rng)
{
    FiltrationData D;
    D.P = P;
    for (const auto& blk : P.blocks()) {
        auto lams = enumerate_cochar_block(blk.n, blk.m);
        const auto& lam = lams[rng.below(lams.size())];
        D.C.push_back(beginning_from_lambda(lam, blk.n, blk.m));
    }
    LiftBasis B(D);
    const int h = B.size();
    D.a.assign(static_cast<std::size_t>(h), Vec());
    D.b.assign(static_cast<std::size_t>(h), Vec());
    for (int k = 0; k < h; ++k) {
        const auto& blk = P.blocks()[B.block(k)];
        bool ft = is_f_type(D, B, k);
        int bound = ft ? B.index(B.block(k), B.degree(k) + blk.n) : k;
        Vec v(static_cast<std::size_t>(h), 0);
        for (int l = 0; l < bound; ++l)
            if (rng.below(2))
                v[l] = rng.element(F);
        (ft ? D.a[k] : D.b[k]) = std::move(v);
    }
    return D;
}

namespace detail {

inline Elem coeff(const Vec& v, int l) { return v.empty() ? 0 : v[l]; }

} // namespace detail

/// Result of the lift: the shtuka (with exact V matrix) and block offsets.
struct Lift {
    LocalShtuka shtuka;
    std::vector<int> block_offsets;
};

/**
 * Builds M with basis g^i_j by induction along the basis order:
 *   F(g_k) = g_{(i,j+n)} + sum a g            (F-type k)
 *   F(g_k) = eps g_{(i,j-m)} + sum b^p F(g)   (otherwise)
 *   V(g_k) = g_{(i,j+m)} + sum c g            (V-source k)
 *   V(g_k) = eps g_{(i,j-n)} + sum d^{1/p} V(g) (otherwise)
 */
inline Lift lift_from_filtration(const FiltrationData& D, const FieldConfig& cfg)
{
    validate_filtration_data(D);
    const GaloisField& F = cfg.field();
    LiftBasis B(D);
    const int h = B.size();
    const Poly t = Poly::monomial(F, 1, 1);
    PolyMatrix A = field::poly_matrix(F, h, h);
    PolyMatrix BV = field::poly_matrix(F, h, h);
    for (int k = 0; k < h; ++k) {
        const auto& blk = D.P.blocks()[B.block(k)];
        int i = B.block(k), j = B.degree(k);
        if (is_f_type(D, B, k)) {
            A(B.index(i, j + blk.n), k) = Poly::one(F);
            for (int l = 0; l < h; ++l)
                if (Elem c = detail::coeff(D.a[k], l))
                    A(l, k) += Poly::constant(F, c);
        } else {
            A(B.index(i, j - blk.m), k) += t;
            for (int l = 0; l < k; ++l)
                if (Elem c = detail::coeff(D.b[k], l))
                    for (int r = 0; r < h; ++r)
                        A(r, k) += A(r, l).scaled(F.frob(c));
        }
        if (is_v_source(D, B, k)) {
            int s = B.index(i, j + blk.m);
            BV(s, k) = Poly::one(F);
            for (int l = 0; l < h; ++l)
                if (Elem c = detail::coeff(D.b[s], l))
                    BV(l, k) += Poly::constant(F, F.neg(c));
        } else {
            int u = B.index(i, j - blk.n);
            BV(u, k) += t;
            for (int l = 0; l < k; ++l)
                if (Elem c = detail::coeff(D.a[u], l))
                    for (int r = 0; r < h; ++r)
                        BV(r, k) += BV(r, l).scaled(F.frob_inv(F.neg(c)));
        }
    }
    Lift L;
    L.shtuka.field = &F;
    L.shtuka.h = h;
    L.shtuka.A = std::move(A);
    L.shtuka.v_matrix = std::move(BV);
    for (std::size_t i = 0; i <= D.C.size(); ++i)
        L.block_offsets.push_back(i < D.C.size() ? B.block_begin(static_cast<int>(i)) : h);
    return L;
}

/**
 * The filtered module Z determined by the structure constants, computed
 * directly over the residue field: F(f_k) for non-F-type k and V(f_k) for
 * non-V-source k follow from FV = VF = 0 applied to the defining relations.
 */
inline Bt1Module assemble_filtered_bt1(const FiltrationData& D, const GaloisField& F)
{
    validate_filtration_data(D);
    LiftBasis B(D);
    const int h = B.size();
    FqMatrix MF(F, h, h), MV(F, h, h);
    for (int k = 0; k < h; ++k) {
        const auto& blk = D.P.blocks()[B.block(k)];
        int i = B.block(k), j = B.degree(k);
        if (is_f_type(D, B, k)) {
            MF(B.index(i, j + blk.n), k) = 1;
            for (int l = 0; l < h; ++l)
                MF(l, k) = F.add(MF(l, k), detail::coeff(D.a[k], l));
        } else {
            // f_k - V(f_{j-m}) = sum b f_l and F V = 0
            for (int l = 0; l < k; ++l)
                if (Elem c = detail::coeff(D.b[k], l))
                    for (int r = 0; r < h; ++r)
                        MF(r, k) = F.add(MF(r, k), F.mul(F.frob(c), MF(r, l)));
        }
    }
    for (int k = 0; k < h; ++k) {
        const auto& blk = D.P.blocks()[B.block(k)];
        int i = B.block(k), j = B.degree(k);
        if (is_v_source(D, B, k)) {
            int s = B.index(i, j + blk.m);
            MV(s, k) = 1;
            for (int l = 0; l < h; ++l)
                MV(l, k) = F.sub(MV(l, k), detail::coeff(D.b[s], l));
        } else {
            int u = B.index(i, j - blk.n);
            for (int l = 0; l < k; ++l)
                if (Elem c = detail::coeff(D.a[u], l))
                    for (int r = 0; r < h; ++r)
                        MV(r, k) = F.sub(MV(r, k), F.mul(F.frob_inv(c), MV(r, l)));
        }
    }
    return Bt1Module(F, MF, MV);
}

/// Outcome of the postcondition checks on a lift.
struct LiftReport {
    bool dieudonne = false;       ///< F V = V F = eps
    bool truncation = false;      ///< M / eps M equals the assembled module
    bool block_stable = false;    ///< the partial sums M_i are F- and V-stable
    bool blocks_isoclinic = false; ///< M_i / M_{i-1} has the slope of block i
    bool newton = false;          ///< Newton polygon of M equals P
    bool compatible = false;      ///< the filtration satisfies the compatibility identities
    std::string failure;

    bool ok() const { return dieudonne && truncation && block_stable && blocks_isoclinic && newton && compatible; }
};

namespace detail {

inline Subspace intersect(const Subspace& U, const Subspace& W)
{
    std::vector<Vec> ann = U.annihilator();
    auto wa = W.annihilator();
    ann.insert(ann.end(), wa.begin(), wa.end());
    if (ann.empty())
        return Subspace::whole(U.field(), U.ambient());
    return Subspace::span(U.field(), U.ambient(),
                          field::kernel(FqMatrix::from_rows(U.field(), U.ambient(), ann)));
}

inline Subspace span_of_indices(const GaloisField& F, int h, const std::vector<int>& idx)
{
    std::vector<Vec> vs;
    for (int k : idx) {
        Vec v(static_cast<std::size_t>(h), 0);
        v[k] = 1;
        vs.push_back(std::move(v));
    }
    return Subspace::span(F, h, vs);
}

} // namespace detail

/**
 * For each block i, with Z_i spanned by the blocks up to i and
 * G^j = Z_{i-1} + span{f^i_{j'} : j' >= j}, checks that Z_i is a sub-module
 * and that F(G^j) + Z_{i-1} = G^{j+n} cap (F(Z_i) + Z_{i-1}) and likewise for
 * V with m.
 */
inline bool check_compatible_filtration(const FiltrationData& D, const Bt1Module& Z)
{
    LiftBasis B(D);
    const GaloisField& F = *Z.field;
    const int h = B.size();
    for (std::size_t i = 0; i < D.C.size(); ++i) {
        const int bi = static_cast<int>(i);
        std::vector<int> prev_idx, cur_idx;
        for (int k = 0; k < B.block_begin(bi); ++k)
            prev_idx.push_back(k);
        for (int k = 0; k < B.block_end(bi); ++k)
            cur_idx.push_back(k);
        Subspace Zprev = detail::span_of_indices(F, h, prev_idx);
        Subspace Zi = detail::span_of_indices(F, h, cur_idx);
        if (!Zi.contains(Z.F_image(Zi)) || !Zi.contains(Z.V_image(Zi)))
            return false;
        const auto& blk = D.P.blocks()[i];
        int lo = *D.C[i].C.begin(), hi = *D.C[i].C.rbegin();
        auto G = [&](int j) {
            std::vector<int> idx = prev_idx;
            for (int k = B.block_begin(bi); k < B.block_end(bi); ++k)
                if (B.degree(k) >= j)
                    idx.push_back(k);
            return detail::span_of_indices(F, h, idx);
        };
        Subspace FZ = Z.F_image(Zi).sum(Zprev);
        Subspace VZ = Z.V_image(Zi).sum(Zprev);
        for (int j = lo - blk.height(); j <= hi + blk.height(); ++j) {
            if (!(Z.F_image(G(j)).sum(Zprev) == detail::intersect(G(j + blk.n), FZ)))
                return false;
            if (!(Z.V_image(G(j)).sum(Zprev) == detail::intersect(G(j + blk.m), VZ)))
                return false;
        }
    }
    return true;
}

inline PolyMatrix sub_block(const PolyMatrix& M, int lo, int hi)
{
    PolyMatrix S = field::poly_matrix(*M.zero().field(), hi - lo, hi - lo);
    for (int r = lo; r < hi; ++r)
        for (int c = lo; c < hi; ++c)
            S(r - lo, c - lo) = M(r, c);
    return S;
}

inline LiftReport check_lift(const FiltrationData& D, const Lift& L)
{
    LiftReport rep;
    const LocalShtuka& s = L.shtuka;
    const GaloisField& F = *s.field;
    const int h = s.h;
    PolyMatrix eps = field::poly_identity(F, h).map([&](const Poly& p) { return p.shifted(1); });
    rep.dieudonne = s.A * field::frob(*s.v_matrix, 1) == eps && *s.v_matrix * field::frob(s.A, -1) == eps;
    if (!rep.dieudonne)
        rep.failure = "F V != eps";

    Bt1Module assembled = assemble_filtered_bt1(D, F);
    rep.truncation = rep.dieudonne && bt1_of(s) == assembled;
    if (rep.dieudonne && !rep.truncation)
        rep.failure = "truncation differs from the filtered module";

    rep.block_stable = true;
    for (std::size_t i = 0; i + 1 < L.block_offsets.size(); ++i) {
        int end = L.block_offsets[i + 1];
        for (int r = end; r < h; ++r)
            for (int c = 0; c < end; ++c)
                if (!s.A(r, c).is_zero() || !(*s.v_matrix)(r, c).is_zero())
                    rep.block_stable = false;
    }
    if (!rep.block_stable && rep.failure.empty())
        rep.failure = "block submodules not stable";

    rep.blocks_isoclinic = true;
    for (std::size_t i = 0; i + 1 < L.block_offsets.size(); ++i) {
        LocalShtuka q;
        q.field = &F;
        q.h = L.block_offsets[i + 1] - L.block_offsets[i];
        q.A = sub_block(s.A, L.block_offsets[i], L.block_offsets[i + 1]);
        const auto& blk = D.P.blocks()[i];
        NewtonPolygon Pi = newton_polygon_of(q);
        if (!(Pi == NewtonPolygon({blk})))
            rep.blocks_isoclinic = false;
    }
    if (!rep.blocks_isoclinic && rep.failure.empty())
        rep.failure = "graded piece has the wrong slope";

    rep.newton = newton_polygon_of(s) == D.P;
    if (!rep.newton && rep.failure.empty())
        rep.failure = "Newton polygon differs from P";

    rep.compatible = assembled.is_valid() && check_compatible_filtration(D, assembled);
    if (!rep.compatible && rep.failure.empty())
        rep.failure = "filtration is not compatible";
    return rep;
}

} // namespace pkern::lab
