// One line per acceptance criterion; exit status 1 if any fails.

#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <random>
#include <sstream>
#include <string>

using namespace pkern;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const ConventionManifest kManifest = ConventionManifest::calibrated_default();

Outcome ground_truth()
{
    auto t0 = Clock::now();
    Criterion C;
    auto t = C.incidence_table({2, 1}, kManifest);
    auto at = [&](const char* w, const char* P) {
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            for (std::size_t c = 0; c < t.cols.size(); ++c)
                if (t.rows[r].to_string() == w && t.cols[c].to_string() == P)
                    return t.value(r, c);
        throw std::runtime_error("cell missing");
    };
    bool known = at("[1,2]", "1/2x2") && at("[2,1]", "0,1") && !at("[1,2]", "0,1");
    CalibrationOptions opt;
    opt.probes = {{2, 1}};
    opt.ground_samples = 1000;
    opt.sigma_trials = 200;
    auto cal = calibrate(opt, &C);
    const auto& fc = *cal.fourth_cell;
    int literal_hits = 0;
    for (const auto& [z, n] : fc.sigma_hits)
        literal_hits += n;
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << "known cells " << (known ? "ok" : "WRONG") << "; cell ([2,1], 1/2x2) = " << (at("[2,1]", "1/2x2") ? "true" : "false")
       << " (literal reading: " << (fc.literal_value ? "true" : "false") << "); oracle: " << fc.oracle_hits << " hits in "
       << fc.oracle_samples << " samples; sigma_conjugate_sample of " << fc.sigma_element.to_string() << ": "
       << literal_hits << "/" << fc.sigma_trials << " land on literal middle elements, "
       << fc.sigma_classes.size() << " classes seen; " << secs << " s";
    bool pass = known && fc.oracle_samples >= 1000 && fc.oracle_hits == 0 && fc.sigma_trials >= 1 &&
                at("[2,1]", "1/2x2") == (fc.oracle_hits > 0) && secs < 10.0;
    return {pass, os.str()};
}

Outcome soundness_sweep()
{
    auto t0 = Clock::now();
    Criterion C;
    lab::FieldConfig cfg{2, 2};
    int violations = 0, pairs = 0, samples = 0;
    for (const auto& hd : {HodgeDatum{2, 1}, HodgeDatum{3, 1}, HodgeDatum{3, 2}, HodgeDatum{4, 2}}) {
        auto obs = observe_pairs(hd, cfg, 300, 2, 20240601);
        samples += obs.samples;
        for (const auto& [k, n] : obs.counts) {
            ++pairs;
            if (!C.lifts_to(hd, parse_permutation(k.first), parse_polygon(k.second), kManifest).value)
                ++violations;
        }
    }
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << samples << " samples, " << pairs << " distinct pairs, " << violations << " violations; " << secs << " s";
    return {violations == 0 && secs < 300.0, os.str()};
}

Outcome minimal_diagonal()
{
    auto t0 = Clock::now();
    Criterion C;
    const auto& F = lab::FieldConfig{}.field();
    int total = 0, ok = 0;
    for (int h = 1; h <= 5; ++h)
        for (int d = 0; d <= h; ++d)
            for (const auto& P : enumerate_polygons({h, d})) {
                ++total;
                auto w = lab::eo_classify(lab::bt1_of(lab::minimal_shtuka(P, F)), {h, d});
                ok += C.lifts_to({h, d}, w, P, kManifest).value ? 1 : 0;
            }
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << ok << "/" << total << " polygons; " << secs << " s";
    return {ok == total && secs < 120.0, os.str()};
}

Outcome coverage()
{
    Criterion C;
    int tables = 0, bad = 0;
    for (int h = 1; h <= 5; ++h)
        for (int d = 0; d <= h; ++d) {
            ++tables;
            auto t = C.incidence_table({h, d}, kManifest);
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                bool any = false;
                for (std::size_t c = 0; c < t.cols.size(); ++c)
                    any = any || t.value(r, c);
                bad += any ? 0 : 1;
            }
            for (std::size_t c = 0; c < t.cols.size(); ++c) {
                bool any = false;
                for (std::size_t r = 0; r < t.rows.size(); ++r)
                    any = any || t.value(r, c);
                bad += any ? 0 : 1;
            }
        }
    std::ostringstream os;
    os << tables << " tables, " << bad << " empty rows/columns";
    return {bad == 0, os.str()};
}

Outcome counting_law()
{
    int blocks = 0, count_fail = 0, roundtrip_fail = 0, window_fail = 0;
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; n + m <= 8; ++m) {
            if (n + m == 0 || std::gcd(n, m) != 1)
                continue;
            ++blocks;
            auto lams = enumerate_cochar_block(n, m);
            long binom = 1;
            for (int i = 1; i <= n; ++i)
                binom = binom * (m + i) / i;
            count_fail += static_cast<long>(lams.size()) == binom ? 0 : 1;
            std::set<std::set<int>> via;
            for (const auto& lam : lams) {
                auto b = beginning_from_lambda(lam, n, m);
                roundtrip_fail += lambda_from_beginning(b) == lam ? 0 : 1;
                std::set<int> s;
                for (int c : b.C)
                    s.insert(c - *b.C.begin());
                via.insert(s);
            }
            window_fail += oracles::window_beginnings(n, m, n * m + n + m + 1) == via ? 0 : 1;
        }
    std::ostringstream os;
    os << blocks << " blocks; count failures " << count_fail << ", round-trip failures " << roundtrip_fail
       << ", window disagreements " << window_fail;
    return {count_fail == 0 && roundtrip_fail == 0 && window_fail == 0, os.str()};
}

Outcome convention_oracles()
{
    std::ostringstream os;
    // word length, exhaustive over the box
    int bfs_checked = 0, bfs_bad = 0;
    for (int h = 2; h <= 3; ++h) {
        auto dist = oracles::bfs_lengths(h, 4, 4 * h * h);
        std::vector<int> lam(static_cast<std::size_t>(h), -2);
        for (;;) {
            for (const auto& u : all_permutations(h)) {
                AffineWeylElement x(lam, u);
                ++bfs_checked;
                auto it = dist.find(x);
                bfs_bad += (it != dist.end() && it->second == length(x)) ? 0 : 1;
            }
            int i = 0;
            while (i < h && lam[i] == 2)
                lam[i++] = -2;
            if (i == h)
                break;
            ++lam[i];
        }
    }
    // coset index
    std::mt19937_64 g(77);
    auto random_element = [&](int h, int box) {
        std::vector<int> lam(static_cast<std::size_t>(h));
        for (auto& v : lam)
            v = static_cast<int>(g() % (2 * box + 1)) - box;
        auto perms = all_permutations(h);
        return AffineWeylElement(lam, perms[g() % perms.size()]);
    };
    int index_bad = 0;
    for (int k = 0; k < 50; ++k) {
        auto x = random_element(2 + static_cast<int>(g() % 3), 3);
        index_bad += length(x) == oracles::index_length(x) ? 0 : 1;
    }
    // planted Iwahori classes
    const auto& F = lab::FieldConfig{}.field();
    int planted_ok = 0;
    for (int k = 0; k < 200; ++k) {
        int h = 2 + static_cast<int>(g() % 3);
        auto x = random_element(h, 2);
        lab::Rng rng(404, static_cast<std::uint64_t>(k));
        auto a = lab::random_iwahori(F, h, 3, rng), b = lab::random_iwahori(F, h, 3, rng);
        planted_ok += lab::iwahori_class_of(a.g * lab::matrix_of(x, F) * b.g) == x ? 1 : 0;
    }
    // coset products against matrix sampling
    int pairs = 0, outside = 0, unwitnessed = 0;
    for (int k = 0; k < 16; ++k) {
        int h = 2 + static_cast<int>(g() % 2);
        auto x = random_element(h, 1), y = random_element(h, 1);
        ++pairs;
        auto S = coset_product_support(x, y);
        auto sampled = oracles::sampled_product_classes(x, y, 500, 900 + static_cast<std::uint64_t>(k));
        for (const auto& c : sampled)
            outside += S.contains(c) ? 0 : 1;
        for (const auto& c : S)
            unwitnessed += sampled.count(c) ? 0 : 1;
    }
    os << "BFS " << bfs_checked - bfs_bad << "/" << bfs_checked << ", index " << 50 - index_bad << "/50, planted "
       << planted_ok << "/200, products " << pairs << " pairs x 500 samples: " << outside << " outside, "
       << unwitnessed << " unwitnessed";
    return {bfs_bad == 0 && index_bad == 0 && planted_ok == 200 && outside == 0 && unwitnessed == 0, os.str()};
}

Outcome lift_construction()
{
    lab::FieldConfig cfg;
    const auto& F = cfg.field();
    int total = 0, failures = 0;
    std::string first;
    for (int h = 1; h <= 4; ++h)
        for (int d = 0; d <= h; ++d)
            for (const auto& P : enumerate_polygons({h, d}))
                for (int k = 0; k < 50; ++k) {
                    ++total;
                    lab::Rng rng(8080, static_cast<std::uint64_t>(total));
                    auto D = lab::random_filtration_data(P, F, rng);
                    auto rep = lab::check_lift(D, lab::lift_from_filtration(D, cfg));
                    if (!rep.ok()) {
                        ++failures;
                        if (first.empty())
                            first = P.to_string() + ": " + rep.failure;
                    }
                }
    std::ostringstream os;
    os << total << " lifts, " << failures << " failures";
    if (!first.empty())
        os << " (first: " << first << ")";
    return {failures == 0, os.str()};
}

Outcome adlv_consistency()
{
    Criterion C;
    int cells = 0, disagree = 0, middles = 0, middle_false = 0;
    for (int h = 1; h <= 4; ++h)
        for (int d = 0; d <= h; ++d) {
            auto t = C.incidence_table({h, d}, kManifest);
            for (std::size_t r = 0; r < t.rows.size(); ++r)
                for (std::size_t c = 0; c < t.cols.size(); ++c) {
                    ++cells;
                    bool a = C.adlv_nonempty(eo_representative({h, d}, t.rows[r]), t.cols[c], kManifest).value;
                    disagree += a == t.value(r, c) ? 0 : 1;
                }
            for (const auto& P : t.cols)
                for (const auto& prof : enumerate_profiles(P)) {
                    ++middles;
                    auto z = middle_element(prof, P, kManifest.eta);
                    middle_false += C.adlv_nonempty(z, P, kManifest).value ? 0 : 1;
                }
        }
    std::ostringstream os;
    os << cells << " cells, " << disagree << " disagreements; " << middles << " middle elements, " << middle_false
       << " false";
    return {disagree == 0 && middle_false == 0, os.str()};
}

} // namespace

int main()
{
    struct Entry {
        const char* name;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {"1 h=2 ground truth", ground_truth},
        {"2 oracle soundness sweep", soundness_sweep},
        {"3 minimal-module diagonal", minimal_diagonal},
        {"4 row/column coverage", coverage},
        {"5 counting law", counting_law},
        {"6 convention oracles", convention_oracles},
        {"7 lift construction", lift_construction},
        {"8 ADLV consistency", adlv_consistency},
    };
    int failed = 0;
    for (const auto& e : entries) {
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", e.name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
