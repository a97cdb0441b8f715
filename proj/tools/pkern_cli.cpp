// Command-line front end: incidence tables, single cells, ADLV queries,
// enumerations, oracle runs and calibration.

#include "pkern/pkern.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

namespace {

using pkern::json;

constexpr const char* kDefaultManifestPath = "pkern-manifest.json";

struct Common {
    std::string manifest_path;
    int max_height = 6;
    double cell_seconds = 60.0;
    std::size_t max_support = 200000;
    int p = 2;
    int r = 2;
    std::uint64_t seed = 1;
    int deg = 2;
};

pkern::ConventionManifest load_manifest(const Common& c)
{
    if (!c.manifest_path.empty())
        return pkern::read_manifest(c.manifest_path);
    if (std::filesystem::exists(kDefaultManifestPath))
        return pkern::read_manifest(kDefaultManifestPath);
    return pkern::ConventionManifest::calibrated_default();
}

pkern::ResourceLimits limits_of(const Common& c)
{
    pkern::ResourceLimits l;
    l.max_height = c.max_height;
    l.seconds_per_cell = c.cell_seconds;
    l.max_support = c.max_support;
    return l;
}

pkern::lab::FieldConfig field_of(const Common& c)
{
    pkern::lab::FieldConfig f{c.p, c.r};
    f.field(); // validates p and r
    return f;
}

void add_limits(CLI::App* sub, Common& c)
{
    sub->add_option("--manifest", c.manifest_path, "convention manifest file");
    sub->add_option("--max-height", c.max_height, "largest height accepted");
    sub->add_option("--cell-seconds", c.cell_seconds, "wall-time limit per cell");
    sub->add_option("--max-support", c.max_support, "largest coset support accepted");
}

void add_field(CLI::App* sub, Common& c)
{
    sub->add_option("--p", c.p, "field characteristic");
    sub->add_option("--r", c.r, "field degree");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--deg", c.deg, "polynomial degree bound for sampled matrices");
}

json cell_json(const pkern::CellResult& res, const pkern::ConventionManifest& m)
{
    json j = pkern::to_json(res, m);
    j["manifest"] = pkern::to_json(m);
    j["version"] = pkern::kVersion;
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ekedahl-Oort types in Newton strata for GL_h"};
    app.set_version_flag("--version", std::string(pkern::kVersion));
    app.require_subcommand(1);
    Common c;

    int height = 0, dim = 0, samples = 300;
    std::string eo, np, xs, ys, format = "csv", block, rule = "full_support", output = kDefaultManifestPath;
    int ground_samples = 1000, sigma_trials = 200;
    bool no_oracle = false;

    auto* check = app.add_subcommand("check", "evaluate one (EO type, polygon) cell");
    check->add_option("--height", height, "h")->required();
    check->add_option("--dim", dim, "d")->required();
    check->add_option("--eo", eo, "left-reduced permutation, e.g. [1,2]")->required();
    check->add_option("--np", np, "Newton polygon, e.g. 1/2x2")->required();
    add_limits(check, c);

    auto* incidence = app.add_subcommand("incidence", "incidence table of EO types and polygons");
    incidence->add_option("--height", height, "h")->required();
    incidence->add_option("--dim", dim, "d")->required();
    incidence->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_limits(incidence, c);

    auto* adlv = app.add_subcommand("adlv", "non-emptiness of X_x(b)");
    adlv->add_option("--x", xs, "element, e.g. perm=[2,1];lam=(0,1)")->required();
    adlv->add_option("--np", np, "Newton polygon of b")->required();
    add_limits(adlv, c);

    auto* cochars = app.add_subcommand("enumerate-cochars", "normalized cocharacters of a slope block");
    cochars->add_option("--block", block, "n,m")->required();

    auto* polys = app.add_subcommand("enumerate-polygons", "Newton polygons with endpoint (h, d)");
    polys->add_option("--height", height, "h")->required();
    polys->add_option("--dim", dim, "d")->required();

    auto* product = app.add_subcommand("coset-product", "support of IxI IyI");
    product->add_option("--x", xs, "left element")->required();
    product->add_option("--y", ys, "right element")->required();
    product->add_option("--rule", rule, "full_support or demazure_max");

    auto* oracle = app.add_subcommand("oracle", "finite-field oracle");
    oracle->require_subcommand(1);
    auto* sample = oracle->add_subcommand("sample", "classify random shtukas (JSON lines)");
    auto* verify = oracle->add_subcommand("verify", "check sampled pairs against the criterion");
    for (auto* sub : {sample, verify}) {
        sub->add_option("--height", height, "h")->required();
        sub->add_option("--dim", dim, "d")->required();
        sub->add_option("--samples", samples, "number of samples");
        add_field(sub, c);
    }
    add_limits(verify, c);

    auto* cal = app.add_subcommand("calibrate", "select the convention manifest against the oracle");
    cal->add_option("--samples", samples, "oracle samples per probe");
    cal->add_option("--ground-samples", ground_samples, "oracle samples at (2,1)");
    cal->add_option("--sigma-trials", sigma_trials, "sigma-conjugation trials");
    cal->add_option("--output", output, "manifest file to write");
    cal->add_flag("--no-oracle", no_oracle, "skip the oracle (literal reading)");
    add_field(cal, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) {
            auto m = load_manifest(c);
            pkern::Criterion C(limits_of(c));
            auto res = C.lifts_to({height, dim}, pkern::parse_permutation(eo), pkern::parse_polygon(np), m);
            std::cout << (res.value ? "true" : "false") << "\n" << cell_json(res, m).dump(2) << "\n";
        } else if (*incidence) {
            auto m = load_manifest(c);
            pkern::Criterion C(limits_of(c));
            auto t = C.incidence_table({height, dim}, m);
            if (format == "json")
                std::cout << pkern::to_json(t).dump(2) << "\n";
            else
                std::cout << pkern::to_csv(t);
        } else if (*adlv) {
            auto m = load_manifest(c);
            pkern::Criterion C(limits_of(c));
            auto res = C.adlv_nonempty(pkern::parse_element(xs), pkern::parse_polygon(np), m);
            std::cout << (res.value ? "true" : "false") << "\n" << cell_json(res, m).dump(2) << "\n";
        } else if (*cochars) {
            auto nm = pkern::parse_int_list(block, '(', ')');
            pkern::detail::require(nm.size() == 2, "--block expects n,m");
            std::cout << json(pkern::enumerate_cochar_block(nm[0], nm[1])).dump() << "\n";
        } else if (*polys) {
            json out = json::array();
            for (const auto& P : pkern::enumerate_polygons({height, dim}))
                out.push_back(pkern::to_json(P));
            std::cout << out.dump() << "\n";
        } else if (*product) {
            auto S = pkern::coset_product_support(pkern::parse_element(xs), pkern::parse_element(ys),
                                                  pkern::fold_rule_from_string(rule));
            json out = json::array();
            for (const auto& z : S)
                out.push_back(z.to_string());
            std::cout << out.dump() << "\n";
        } else if (*sample) {
            pkern::HodgeDatum hd{height, dim};
            auto f = field_of(c);
            for (int k = 0; k < samples; ++k) {
                auto s = pkern::lab::sample_shtuka(hd, f, c.deg, c.seed, static_cast<std::uint64_t>(k));
                json line{{"seed", c.seed},
                          {"stream", k},
                          {"eo", pkern::lab::eo_classify(pkern::lab::bt1_of(s), hd).to_string()},
                          {"np", pkern::lab::newton_polygon_of(s).to_string()}};
                std::cout << line.dump() << "\n";
            }
        } else if (*verify) {
            pkern::HodgeDatum hd{height, dim};
            auto m = load_manifest(c);
            pkern::Criterion C(limits_of(c));
            auto obs = pkern::observe_pairs(hd, field_of(c), samples, c.deg, c.seed);
            json pairs = json::array();
            int violations = 0;
            for (const auto& [k, n] : obs.counts) {
                bool ok = C.lifts_to(hd, pkern::parse_permutation(k.first), pkern::parse_polygon(k.second), m).value;
                violations += ok ? 0 : 1;
                pairs.push_back({{"eo", k.first}, {"np", k.second}, {"count", n}, {"lifts_to", ok}});
            }
            json out{{"hodge", {{"h", hd.h}, {"d", hd.d}}},
                     {"samples", samples},
                     {"manifest", pkern::to_json(m)},
                     {"version", pkern::kVersion},
                     {"pairs", pairs},
                     {"violations", violations}};
            std::cout << out.dump(2) << "\n";
            return violations == 0 ? 0 : 1;
        } else if (*cal) {
            pkern::CalibrationOptions opt;
            opt.field = field_of(c);
            opt.samples = samples;
            opt.ground_samples = ground_samples;
            opt.sigma_trials = sigma_trials;
            opt.deg = c.deg;
            opt.seed = c.seed;
            opt.oracle = !no_oracle;
            auto res = pkern::calibrate(opt);
            for (const auto& w : res.warnings)
                std::cerr << "warning: " << w << "\n";
            pkern::write_manifest(output, res.manifest);
            json out = pkern::to_json(res);
            out["manifest_file"] = output;
            std::cout << out.dump(2) << "\n";
        }
    } catch (const pkern::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pkern::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
