#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace pkern;

namespace {

const ConventionManifest kDefault = ConventionManifest::calibrated_default();

bool cell(Criterion& C, const HodgeDatum& hd, const Permutation& w, const char* P,
          const ConventionManifest& m = kDefault)
{
    return C.lifts_to(hd, w, parse_polygon(P), m).value;
}

} // namespace

TEST(Criterion, RankTwoKnownCells)
{
    Criterion C;
    EXPECT_TRUE(cell(C, {2, 1}, Permutation{1, 2}, "1/2x2"));
    EXPECT_TRUE(cell(C, {2, 1}, Permutation{2, 1}, "0,1"));
    EXPECT_FALSE(cell(C, {2, 1}, Permutation{1, 2}, "0,1"));
    EXPECT_FALSE(cell(C, {2, 1}, Permutation{2, 1}, "1/2x2"));
}

TEST(Criterion, LiteralReadingMakesTheFourthCellTrue)
{
    Criterion C;
    auto lit = ConventionManifest::paper_literal();
    auto r = C.lifts_to({2, 1}, Permutation{2, 1}, parse_polygon("1/2x2"), lit);
    ASSERT_TRUE(r.value);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->y, (Permutation{2, 1}));
    EXPECT_EQ(r.witness->profile.lam, (std::vector<int>{0, 1}));
}

TEST(Criterion, WitnessesReproduce)
{
    Criterion C;
    for (const auto& m : {kDefault, ConventionManifest::paper_literal()}) {
        auto t = C.incidence_table({3, 2}, m);
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            for (std::size_t c = 0; c < t.cols.size(); ++c) {
                const auto& res = t.cells[r][c];
                if (res.value) {
                    ASSERT_TRUE(res.witness.has_value());
                    EXPECT_TRUE(sandwich_contains(res.witness->target, res.witness->y, res.witness->middle, m.rule));
                    auto chain = witness_chain(*res.witness, m);
                    EXPECT_EQ(chain.back().size, res.witness->support_size);
                } else {
                    EXPECT_FALSE(res.witness.has_value());
                    EXPECT_EQ(res.pairs_searched, res.profiles_searched * 6);
                }
            }
    }
}

TEST(Criterion, TrivialTable)
{
    Criterion C;
    auto t = C.incidence_table({1, 0}, kDefault);
    ASSERT_EQ(t.rows.size(), 1u);
    ASSERT_EQ(t.cols.size(), 1u);
    EXPECT_TRUE(t.value(0, 0));
}

TEST(Criterion, CoverageAndDiagonal)
{
    Criterion C;
    const auto& F = lab::FieldConfig{}.field();
    for (int h = 1; h <= 5; ++h)
        for (int d = 0; d <= h; ++d) {
            auto t = C.incidence_table({h, d}, kDefault);
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                bool any = false;
                for (std::size_t c = 0; c < t.cols.size(); ++c)
                    any = any || t.value(r, c);
                EXPECT_TRUE(any) << "row " << t.rows[r].to_string();
            }
            for (std::size_t c = 0; c < t.cols.size(); ++c) {
                bool any = false;
                for (std::size_t r = 0; r < t.rows.size(); ++r)
                    any = any || t.value(r, c);
                EXPECT_TRUE(any) << "column " << t.cols[c].to_string();
                auto w = lab::eo_classify(lab::bt1_of(lab::minimal_shtuka(t.cols[c], F)), {h, d});
                EXPECT_TRUE(C.lifts_to({h, d}, w, t.cols[c], kDefault).value) << t.cols[c].to_string();
            }
        }
}

TEST(Criterion, DeterministicTables)
{
    Criterion A, B;
    auto a = to_json(A.incidence_table({4, 2}, kDefault)).dump();
    auto b = to_json(B.incidence_table({4, 2}, kDefault)).dump();
    EXPECT_EQ(a, b);
    B.clear_cache();
    EXPECT_EQ(to_json(B.incidence_table({4, 2}, kDefault)).dump(), a);
}

TEST(Criterion, DualityIsAnInvolution)
{
    for (int h = 2; h <= 4; ++h)
        for (int d = 0; d <= h; ++d)
            for (const auto& w : eo_types({h, d})) {
                auto x = eo_representative({h, d}, w);
                auto y = dual_element(x);
                EXPECT_TRUE(in_minuscule_double_coset(y, h, h - d));
                EXPECT_EQ(dual_element(y), x);
            }
    EXPECT_EQ(dual_polygon(parse_polygon("0,1/3x3")).to_string(), "2/3x3,1");
}

TEST(Criterion, MirrorAgreesOnSmallTables)
{
    Criterion C;
    auto mirrored = kDefault;
    mirrored.mirror = true;
    for (const auto& hd : {HodgeDatum{2, 1}, HodgeDatum{3, 1}, HodgeDatum{3, 2}}) {
        auto a = C.incidence_table(hd, kDefault), b = C.incidence_table(hd, mirrored);
        for (std::size_t r = 0; r < a.rows.size(); ++r)
            for (std::size_t c = 0; c < a.cols.size(); ++c)
                EXPECT_EQ(a.value(r, c), b.value(r, c));
    }
}

TEST(Criterion, Adlv)
{
    Criterion C;
    auto ss = parse_polygon("1/2x2"), ord = parse_polygon("0,1");
    EXPECT_TRUE(C.adlv_nonempty(x_block(1, 1), ss, kDefault).value);
    EXPECT_TRUE(C.adlv_nonempty(AffineWeylElement::translation(std::vector<int>{1, 0}), ord, kDefault).value);
    EXPECT_FALSE(C.adlv_nonempty(x_block(1, 1), ord, kDefault).value);
    EXPECT_THROW(C.adlv_nonempty(AffineWeylElement::translation(std::vector<int>{2, -1}), ord, kDefault),
                 ValidationError);
}

TEST(Criterion, ShapeMismatchAndGuards)
{
    Criterion C;
    EXPECT_THROW(C.lifts_to({3, 1}, Permutation{1, 2, 3}, parse_polygon("1/2x2"), kDefault), ValidationError);
    EXPECT_THROW(C.lifts_to({3, 1}, Permutation{3, 2, 1}, parse_polygon("1/3x3"), kDefault), ValidationError);
    EXPECT_THROW(C.incidence_table({7, 3}, kDefault), ResourceError);
    ResourceLimits tight;
    tight.max_support = 1;
    Criterion small(tight);
    EXPECT_THROW(small.incidence_table({3, 1}, kDefault), ResourceError);
}

TEST(Calibration, DefaultProbesSelectTheBuiltinManifest)
{
    auto res = calibrate();
    EXPECT_TRUE(res.manifest.same_variant(ConventionManifest::calibrated_default())) << res.manifest.label();
    EXPECT_TRUE(res.report.empty());
    ASSERT_TRUE(res.fourth_cell.has_value());
    EXPECT_FALSE(res.fourth_cell->value);
    EXPECT_TRUE(res.fourth_cell->literal_value);
    EXPECT_GE(res.fourth_cell->oracle_samples, 1000);
    EXPECT_EQ(res.fourth_cell->oracle_hits, 0);
    auto j = to_json(res);
    EXPECT_EQ(j["fourth_cell"]["oracle"]["note"], "not observed in 1000 samples");
}

TEST(Calibration, RankTwoProbeAlone)
{
    CalibrationOptions opt;
    opt.probes = {{2, 1}};
    auto res = calibrate(opt);
    Criterion C;
    EXPECT_TRUE(cell(C, {2, 1}, Permutation{1, 2}, "1/2x2", res.manifest));
    EXPECT_TRUE(cell(C, {2, 1}, Permutation{2, 1}, "0,1", res.manifest));
    EXPECT_FALSE(cell(C, {2, 1}, Permutation{1, 2}, "0,1", res.manifest));
}

TEST(Calibration, OracleDisabled)
{
    CalibrationOptions opt;
    opt.oracle = false;
    auto res = calibrate(opt);
    EXPECT_TRUE(res.manifest.same_variant(ConventionManifest::paper_literal()));
    EXPECT_FALSE(res.warnings.empty());
}

TEST(Calibration, DemazureRuleNeverSurvives)
{
    auto res = calibrate();
    for (const auto& v : res.variants)
        if (v.manifest.rule == FoldRule::demazure_max)
            EXPECT_FALSE(v.survives) << v.manifest.label();
}
