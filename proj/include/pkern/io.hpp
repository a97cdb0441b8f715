#pragma once

#include "pkern/affine_weyl.hpp"
#include "pkern/criterion.hpp"
#include "pkern/error.hpp"
#include "pkern/permutation.hpp"
#include "pkern/polygons.hpp"
#include "pkern/version.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace pkern {

using json = nlohmann::ordered_json;

/// Comma separated integers, optionally wrapped in one pair of brackets.
inline std::vector<int> parse_int_list(const std::string& text, char open, char close)
{
    std::string s = detail::strip(text);
    if (!s.empty() && s.front() == open) {
        detail::require(s.size() >= 2 && s.back() == close, "unbalanced brackets in '" + text + "'");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<int> out;
    if (s.empty())
        return out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = s.find(',', start);
        out.push_back(detail::parse_int(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start),
                                        "'" + text + "'"));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

/// "[2,1]" or "2,1".
inline Permutation parse_permutation(const std::string& text)
{
    std::vector<int> v = parse_int_list(text, '[', ']');
    detail::require(!v.empty(), "empty permutation");
    return Permutation(v);
}

/// "perm=[2,1];lam=(0,1)", fields in either order.
inline AffineWeylElement parse_element(const std::string& text)
{
    std::string s = detail::strip(text);
    std::optional<Permutation> perm;
    std::optional<std::vector<int>> lam;
    std::size_t start = 0;
    while (start < s.size()) {
        std::size_t semi = s.find(';', start);
        std::string field = s.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        auto eq = field.find('=');
        detail::require(eq != std::string::npos, "expected key=value in element '" + text + "'");
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "perm")
            perm = parse_permutation(val);
        else if (key == "lam")
            lam = parse_int_list(val, '(', ')');
        else
            throw ValidationError("unknown field '" + key + "' in element '" + text + "'");
        if (semi == std::string::npos)
            break;
        start = semi + 1;
    }
    detail::require(perm.has_value(), "element '" + text + "' has no perm field");
    if (!lam)
        lam = std::vector<int>(static_cast<std::size_t>(perm->degree()), 0);
    detail::require(static_cast<int>(lam->size()) == perm->degree(), "perm and lam have different lengths");
    return AffineWeylElement(*lam, *perm);
}

inline json to_json(const Permutation& w)
{
    json j = json::array();
    for (int i = 1; i <= w.degree(); ++i)
        j.push_back(w(i));
    return j;
}

inline json to_json(const AffineWeylElement& x)
{
    return json{{"perm", to_json(x.perm())}, {"lam", x.lam_vector()}, {"text", x.to_string()}};
}

inline AffineWeylElement element_from_json(const json& j)
{
    try {
        if (j.is_string())
            return parse_element(j.get<std::string>());
        auto perm = j.at("perm").get<std::vector<int>>();
        auto lam = j.at("lam").get<std::vector<int>>();
        detail::require(perm.size() == lam.size(), "perm and lam have different lengths");
        return AffineWeylElement(lam, Permutation(perm));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed element JSON: ") + e.what());
    }
}

inline json to_json(const NewtonPolygon& P)
{
    json blocks = json::array();
    for (const auto& b : P.blocks())
        blocks.push_back({b.n, b.m});
    return json{{"blocks", blocks}, {"text", P.to_string()}};
}

inline NewtonPolygon polygon_from_json(const json& j)
{
    try {
        if (j.is_string())
            return parse_polygon(j.get<std::string>());
        std::vector<SlopeBlock> blocks;
        for (const auto& b : j.at("blocks"))
            blocks.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
        return NewtonPolygon(std::move(blocks));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed polygon JSON: ") + e.what());
    }
}

inline json to_json(const ConventionManifest& m)
{
    return json{{"rule", to_string(m.rule)},
                {"orientation", to_string(m.orientation)},
                {"eta", to_string(m.eta)},
                {"mirror", m.mirror},
                {"source", m.source}};
}

inline ConventionManifest manifest_from_json(const json& j)
{
    try {
        const json& b = j.contains("manifest") ? j.at("manifest") : j;
        ConventionManifest m;
        m.rule = fold_rule_from_string(b.at("rule").get<std::string>());
        m.orientation = orientation_from_string(b.at("orientation").get<std::string>());
        m.eta = eta_order_from_string(b.at("eta").get<std::string>());
        m.mirror = b.at("mirror").get<bool>();
        m.source = b.value("source", std::string("file"));
        return m;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
    }
}

inline constexpr int kManifestFormat = 1;

/// Versioned manifest file.
inline void write_manifest(const std::string& path, const ConventionManifest& m)
{
    std::ofstream out(path);
    detail::require(static_cast<bool>(out), "cannot write manifest file " + path);
    json j{{"format", kManifestFormat}, {"version", kVersion}, {"manifest", to_json(m)}};
    out << j.dump(2) << "\n";
}

inline ConventionManifest read_manifest(const std::string& path)
{
    std::ifstream in(path);
    detail::require(static_cast<bool>(in), "cannot read manifest file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("manifest file " + path + " is not valid JSON: " + e.what());
    }
    detail::require(j.value("format", 0) == kManifestFormat, "unsupported manifest format in " + path);
    return manifest_from_json(j);
}

inline json to_json(const Witness& w, const ConventionManifest& m)
{
    json chain = json::array();
    for (const auto& st : witness_chain(w, m))
        chain.push_back({{"letter", st.letter}, {"support_size", st.size}});
    return json{{"lambda", w.profile.lam},
                {"block_sizes", w.profile.block_sizes},
                {"y", to_json(w.y)},
                {"middle", to_json(w.middle)},
                {"target", to_json(w.target)},
                {"chain", chain},
                {"support_size", w.support_size}};
}

inline json to_json(const CellResult& r, const ConventionManifest& m)
{
    json j{{"value", r.value}};
    if (r.witness)
        j["witness"] = to_json(*r.witness, m);
    else
        j["searched"] = {{"profiles", r.profiles_searched}, {"pairs", r.pairs_searched}};
    return j;
}

inline json to_json(const IncidenceTable& t)
{
    json rows = json::array(), cols = json::array(), cells = json::array();
    for (const auto& w : t.rows)
        rows.push_back(w.to_string());
    for (const auto& P : t.cols)
        cols.push_back(to_json(P));
    for (const auto& row : t.cells) {
        json jr = json::array();
        for (const auto& c : row)
            jr.push_back(to_json(c, t.manifest));
        cells.push_back(jr);
    }
    return json{{"version", t.version},
                {"manifest", to_json(t.manifest)},
                {"hodge", {{"h", t.hodge.h}, {"d", t.hodge.d}}},
                {"rows", rows},
                {"cols", cols},
                {"cells", cells}};
}

/// Comment line with version and manifest, header of polygon strings, one row
/// per EO type.
inline std::string to_csv(const IncidenceTable& t)
{
    std::ostringstream os;
    os << "# pkern " << t.version << " manifest " << t.manifest.label() << " source=" << t.manifest.source << "\n";
    os << "eo";
    for (const auto& P : t.cols)
        os << ",\"" << P.to_string() << "\"";
    os << "\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << "\"" << t.rows[r].to_string() << "\"";
        for (std::size_t c = 0; c < t.cols.size(); ++c)
            os << "," << (t.value(r, c) ? "true" : "false");
        os << "\n";
    }
    return os.str();
}

} // namespace pkern
