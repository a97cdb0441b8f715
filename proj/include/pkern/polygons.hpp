#pragma once

#include "pkern/affine_weyl.hpp"
#include "pkern/error.hpp"
#include "pkern/permutation.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace pkern {

using Rational = boost::rational<int>;

/// Isosimple block of slope n / (n + m).
struct SlopeBlock {
    int n = 0;
    int m = 1;

    int height() const { return n + m; }
    Rational slope() const { return Rational(n, n + m); }
    bool operator==(const SlopeBlock&) const = default;
};

/**
 * Newton polygon as an ordered list of isosimple blocks, slope ascending.
 * A slope occurring with multiplicity k (n + m) contributes k copies of the
 * block (n, m).
 */
class NewtonPolygon {
public:
    NewtonPolygon() = default;

    explicit NewtonPolygon(std::vector<SlopeBlock> blocks) : blocks_(std::move(blocks))
    {
        for (const auto& b : blocks_) {
            detail::require(b.n >= 0 && b.m >= 0 && b.n + b.m >= 1, "block (n,m) must be non-negative");
            detail::require(std::gcd(b.n, b.m) == 1, "block (n,m) must be coprime");
        }
        std::stable_sort(blocks_.begin(), blocks_.end(),
                         [](const SlopeBlock& a, const SlopeBlock& b) { return a.slope() < b.slope(); });
    }

    const std::vector<SlopeBlock>& blocks() const { return blocks_; }
    std::size_t num_blocks() const { return blocks_.size(); }

    int height() const
    {
        int s = 0;
        for (const auto& b : blocks_)
            s += b.height();
        return s;
    }

    int rise() const
    {
        int s = 0;
        for (const auto& b : blocks_)
            s += b.n;
        return s;
    }

    std::vector<int> block_sizes() const
    {
        std::vector<int> out;
        for (const auto& b : blocks_)
            out.push_back(b.height());
        return out;
    }

    /// Each slope repeated according to its multiplicity.
    std::vector<Rational> expanded_slopes() const
    {
        std::vector<Rational> out;
        for (const auto& b : blocks_)
            for (int k = 0; k < b.height(); ++k)
                out.push_back(b.slope());
        return out;
    }

    /// Canonical string, e.g. "0x2,1" or "1/2x2".
    std::string to_string() const
    {
        std::string s;
        std::size_t i = 0;
        while (i < blocks_.size()) {
            std::size_t j = i;
            int mult = 0;
            while (j < blocks_.size() && blocks_[j] == blocks_[i])
                mult += blocks_[j++].height();
            if (!s.empty())
                s += ',';
            Rational q = blocks_[i].slope();
            s += std::to_string(q.numerator());
            if (q.denominator() != 1)
                s += "/" + std::to_string(q.denominator());
            if (mult > 1)
                s += "x" + std::to_string(mult);
            i = j;
        }
        return s;
    }

    bool operator==(const NewtonPolygon&) const = default;

private:
    std::vector<SlopeBlock> blocks_;
};

/// Slopes with multiplicity (any order) to blocks; multiplicities of a slope
/// n/(n+m) must be multiples of n+m.
inline NewtonPolygon polygon_from_slopes(std::vector<Rational> slopes)
{
    std::sort(slopes.begin(), slopes.end());
    std::vector<SlopeBlock> blocks;
    std::size_t i = 0;
    while (i < slopes.size()) {
        Rational q = slopes[i];
        detail::require(q >= 0 && q <= 1, "slope outside [0,1]");
        std::size_t j = i;
        while (j < slopes.size() && slopes[j] == q)
            ++j;
        int n = q.numerator();
        int m = q.denominator() - n;
        int mult = static_cast<int>(j - i);
        detail::require(mult % (n + m) == 0,
                        "multiplicity of slope " + std::to_string(n) + "/" + std::to_string(n + m) +
                            " is not a multiple of its denominator");
        for (int k = 0; k < mult / (n + m); ++k)
            blocks.push_back({n, m});
        i = j;
    }
    return NewtonPolygon(std::move(blocks));
}

namespace detail {

inline int parse_int(const std::string& s, const std::string& ctx)
{
    detail::require(!s.empty(), "empty number in " + ctx);
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw ValidationError("malformed number '" + s + "' in " + ctx);
    }
    detail::require(pos == s.size(), "malformed number '" + s + "' in " + ctx);
    return v;
}

inline std::string strip(const std::string& s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += c;
    return out;
}

} // namespace detail

/// Parses "0,1", "1/2x2", "1/3x3,1" (slope with optional multiplicity).
inline NewtonPolygon parse_polygon(const std::string& text)
{
    std::string s = detail::strip(text);
    detail::require(!s.empty(), "empty polygon");
    std::vector<Rational> slopes;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        detail::require(!tok.empty(), "empty slope in polygon '" + text + "'");
        int mult = 1;
        if (auto x = tok.find('x'); x != std::string::npos) {
            mult = detail::parse_int(tok.substr(x + 1), "polygon '" + text + "'");
            detail::require(mult >= 1, "multiplicity must be positive");
            tok = tok.substr(0, x);
        }
        int num = 0, den = 1;
        if (auto sl = tok.find('/'); sl != std::string::npos) {
            num = detail::parse_int(tok.substr(0, sl), "polygon '" + text + "'");
            den = detail::parse_int(tok.substr(sl + 1), "polygon '" + text + "'");
            detail::require(den > 0, "slope denominator must be positive");
        } else {
            num = detail::parse_int(tok, "polygon '" + text + "'");
        }
        for (int k = 0; k < mult; ++k)
            slopes.emplace_back(num, den);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return polygon_from_slopes(std::move(slopes));
}

/// Height h and rise d; mu = (1^d, 0^{h-d}).
struct HodgeDatum {
    int h = 0;
    int d = 0;

    HodgeDatum() = default;
    HodgeDatum(int h_, int d_) : h(h_), d(d_)
    {
        detail::require(h >= 1 && h <= kMaxRank, "height out of range");
        detail::require(d >= 0 && d <= h, "dimension must satisfy 0 <= d <= h");
    }

    bool operator==(const HodgeDatum&) const = default;
};

inline HodgeDatum hodge_of(const NewtonPolygon& P) { return {P.height(), P.rise()}; }

struct MuAndType {
    std::vector<int> mu;
    SimpleSubset I;
};

/// mu = (1^d, 0^{h-d}) and its stabilizer type I = S \ {(d, d+1)}.
inline MuAndType mu_and_type(const HodgeDatum& hd)
{
    MuAndType r;
    r.mu.assign(static_cast<std::size_t>(hd.h), 0);
    for (int i = 0; i < hd.d; ++i)
        r.mu[i] = 1;
    r.I = all_simple(hd.h);
    r.I.erase(hd.d);
    return r;
}

/// The minimal Dieudonne module's Frobenius in the basis (e_h, ..., e_1).
inline AffineWeylElement x_block(int n, int m)
{
    detail::require(n >= 0 && m >= 0 && n + m >= 1 && std::gcd(n, m) == 1, "x_block needs coprime (n,m)");
    const int h = n + m;
    std::vector<int> img(static_cast<std::size_t>(h));
    std::vector<int> lam(static_cast<std::size_t>(h), 0);
    for (int j = 1; j <= h; ++j) {
        if (j > n) {
            img[j - 1] = j - n;
        } else {
            img[j - 1] = j + m;
            lam[j + m - 1] = 1;
        }
    }
    return AffineWeylElement(lam, Permutation(img));
}

/// Block diagonal assembly of elements along the diagonal.
inline AffineWeylElement block_diagonal(const std::vector<AffineWeylElement>& parts)
{
    std::vector<int> img, lam;
    int offset = 0;
    for (const auto& x : parts) {
        for (int j = 1; j <= x.rank(); ++j) {
            img.push_back(x.perm()(j) + offset);
            lam.push_back(x.lam(j));
        }
        offset += x.rank();
    }
    return AffineWeylElement(lam, Permutation(img));
}

inline AffineWeylElement x_of_polygon(const NewtonPolygon& P)
{
    std::vector<AffineWeylElement> parts;
    for (const auto& b : P.blocks())
        parts.push_back(x_block(b.n, b.m));
    return block_diagonal(parts);
}

/// w w_0 w_{0,I} eps^mu for a left-reduced w.
inline AffineWeylElement eo_representative(const HodgeDatum& hd, const Permutation& w)
{
    detail::require(w.degree() == hd.h, "EO permutation has the wrong degree");
    MuAndType mt = mu_and_type(hd);
    detail::require(is_left_reduced(w, mt.I), "EO permutation " + w.to_string() + " is not left-reduced");
    Permutation p = w * longest_element(hd.h, all_simple(hd.h)) * longest_element(hd.h, mt.I);
    return AffineWeylElement::from_perm(p) * AffineWeylElement::translation(mt.mu);
}

/// EO types of (h, d): the left-reduced elements, lexicographic.
inline std::vector<Permutation> eo_types(const HodgeDatum& hd)
{
    return min_coset_reps(hd.h, mu_and_type(hd).I);
}

/// All Newton polygons with endpoint (h, d), ordered lexicographically by
/// their expanded slope sequence.
inline std::vector<NewtonPolygon> enumerate_polygons(const HodgeDatum& hd)
{
    std::vector<SlopeBlock> kinds;
    for (int s = 1; s <= hd.h; ++s)
        for (int n = 0; n <= s; ++n)
            if (std::gcd(n, s - n) == 1)
                kinds.push_back({n, s - n});
    std::sort(kinds.begin(), kinds.end(),
              [](const SlopeBlock& a, const SlopeBlock& b) { return a.slope() < b.slope(); });

    std::vector<NewtonPolygon> out;
    std::vector<SlopeBlock> cur;
    auto rec = [&](auto&& self, std::size_t from, int h_left, int d_left) -> void {
        if (h_left == 0) {
            if (d_left == 0)
                out.emplace_back(cur);
            return;
        }
        for (std::size_t k = from; k < kinds.size(); ++k) {
            const auto& b = kinds[k];
            if (b.height() > h_left || b.n > d_left)
                continue;
            cur.push_back(b);
            self(self, k, h_left - b.height(), d_left - b.n);
            cur.pop_back();
        }
    };
    rec(rec, 0, hd.h, hd.d);
    std::sort(out.begin(), out.end(), [](const NewtonPolygon& a, const NewtonPolygon& b) {
        return a.expanded_slopes() < b.expanded_slopes();
    });
    return out;
}

} // namespace pkern
