#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace pkern;

namespace {

long binomial(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

/// Nondecreasing slope sequences of length h summing to d in which each slope
/// a/b (lowest terms) occurs a multiple of b times.
long brute_polygon_count(int h, int d)
{
    std::vector<Rational> pool;
    for (int b = 1; b <= h; ++b)
        for (int a = 0; a <= b; ++a)
            if (std::gcd(a, b) == 1)
                pool.emplace_back(a, b);
    std::sort(pool.begin(), pool.end());
    long count = 0;
    std::vector<Rational> seq;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(seq.size()) == h) {
            Rational sum = std::accumulate(seq.begin(), seq.end(), Rational(0));
            if (sum != Rational(d))
                return;
            std::size_t i = 0;
            while (i < seq.size()) {
                std::size_t j = i;
                while (j < seq.size() && seq[j] == seq[i])
                    ++j;
                if (static_cast<int>(j - i) % seq[i].denominator() != 0)
                    return;
                i = j;
            }
            ++count;
            return;
        }
        for (std::size_t k = from; k < pool.size(); ++k) {
            seq.push_back(pool[k]);
            self(self, k);
            seq.pop_back();
        }
    };
    rec(rec, 0);
    return count;
}

} // namespace

TEST(Polygons, ParseAndPrint)
{
    EXPECT_EQ(parse_polygon("1/2x2").to_string(), "1/2x2");
    EXPECT_EQ(parse_polygon(" 0 , 1 ").to_string(), "0,1");
    EXPECT_EQ(parse_polygon("1,0").to_string(), "0,1");
    EXPECT_EQ(parse_polygon("1/3x3,1").height(), 4);
    EXPECT_EQ(parse_polygon("1/3x3,1").rise(), 2);
    EXPECT_THROW(parse_polygon("1/2"), ValidationError);
    EXPECT_THROW(parse_polygon("3/2x2"), ValidationError);
    EXPECT_THROW(parse_polygon("a"), ValidationError);
    EXPECT_THROW(parse_polygon(""), ValidationError);
    EXPECT_THROW(NewtonPolygon({{2, 2}}), ValidationError);
}

TEST(Polygons, EnumerationForSmallData)
{
    auto names = [](const HodgeDatum& hd) {
        std::vector<std::string> out;
        for (const auto& P : enumerate_polygons(hd))
            out.push_back(P.to_string());
        return out;
    };
    EXPECT_EQ(names({2, 1}), (std::vector<std::string>{"0,1", "1/2x2"}));
    EXPECT_EQ(names({3, 1}), (std::vector<std::string>{"0x2,1", "0,1/2x2", "1/3x3"}));
    EXPECT_EQ(names({1, 0}), (std::vector<std::string>{"0"}));
}

TEST(Polygons, EnumerationMatchesBruteForce)
{
    for (int h = 1; h <= 7; ++h)
        for (int d = 0; d <= h; ++d) {
            auto polys = enumerate_polygons({h, d});
            EXPECT_EQ(static_cast<long>(polys.size()), brute_polygon_count(h, d)) << h << "," << d;
            for (std::size_t i = 0; i < polys.size(); ++i) {
                EXPECT_EQ(polys[i].height(), h);
                EXPECT_EQ(polys[i].rise(), d);
                EXPECT_EQ(parse_polygon(polys[i].to_string()), polys[i]);
                if (i > 0)
                    EXPECT_LT(polys[i - 1].expanded_slopes(), polys[i].expanded_slopes());
            }
        }
}

TEST(Polygons, MinimalElements)
{
    EXPECT_EQ(x_block(1, 2).to_string(), "perm=[3,1,2];lam=(0,0,1)");
    EXPECT_EQ(x_block(1, 1), omega(2));
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m) {
            if (n + m == 0 || std::gcd(n, m) != 1)
                continue;
            auto x = x_block(n, m);
            EXPECT_EQ(x.det_valuation(), n);
            // x^{n+m} = eps^n
            AffineWeylElement p = AffineWeylElement::identity(n + m);
            for (int k = 0; k < n + m; ++k)
                p = p * x;
            EXPECT_EQ(p, AffineWeylElement::translation(std::vector<int>(n + m, n)));
        }
}

TEST(Polygons, EoRepresentatives)
{
    EXPECT_EQ(eo_representative({2, 1}, Permutation{2, 1}), AffineWeylElement::translation(std::vector<int>{1, 0}));
    EXPECT_THROW(eo_representative({3, 1}, Permutation{3, 2, 1}), ValidationError);
    for (int h = 1; h <= 6; ++h)
        for (int d = 0; d <= h; ++d) {
            auto types = eo_types({h, d});
            EXPECT_EQ(static_cast<long>(types.size()), binomial(h, d));
            for (const auto& w : types)
                EXPECT_TRUE(in_minuscule_double_coset(eo_representative({h, d}, w), h, d));
        }
}

TEST(Semimodules, CountingLawAndBijection)
{
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; m + n <= 8; ++m) {
            if (n + m == 0 || std::gcd(n, m) != 1)
                continue;
            auto lams = enumerate_cochar_block(n, m);
            EXPECT_EQ(static_cast<long>(lams.size()), binomial(n + m, n)) << n << "," << m;
            std::set<std::set<int>> via_lambda;
            for (const auto& lam : lams) {
                auto b = beginning_from_lambda(lam, n, m);
                EXPECT_EQ(lambda_from_beginning(b), lam);
                EXPECT_TRUE(in_minuscule_double_coset(conj_by_translation(lam, x_block(n, m)), n + m, n));
                std::set<int> shifted;
                int mn = *b.C.begin();
                for (int c : b.C)
                    shifted.insert(c - mn);
                via_lambda.insert(shifted);
            }
            auto window = oracles::window_beginnings(n, m, n * m + n + m + 1);
            EXPECT_EQ(window, via_lambda) << n << "," << m;
        }
}

TEST(Semimodules, SmallBlocks)
{
    EXPECT_EQ(enumerate_cochar_block(1, 2), (std::vector<std::vector<int>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}}));
    EXPECT_EQ(enumerate_cochar_block(2, 3).size(), 10u);
}

TEST(Semimodules, CentralShift)
{
    // lam + c (1,...,1) gives the same conjugate and the beginning shifted by c h
    for (const auto& lam : enumerate_cochar_block(2, 3)) {
        auto shifted = lam;
        for (auto& v : shifted)
            v += 2;
        EXPECT_EQ(conj_by_translation(shifted, x_block(2, 3)), conj_by_translation(lam, x_block(2, 3)));
        auto b0 = beginning_from_lambda(lam, 2, 3), b1 = beginning_from_lambda(shifted, 2, 3);
        std::set<int> expect;
        for (int c : b0.C)
            expect.insert(c + 10);
        EXPECT_EQ(b1.C, expect);
    }
}

TEST(Semimodules, ProfilesAndMiddleElements)
{
    auto P = parse_polygon("1/2x2,1/3x3");
    auto profs = enumerate_profiles(P);
    EXPECT_EQ(profs.size(), 2u * 3u);
    for (const auto& prof : profs)
        for (auto order : {EtaOrder::ascending, EtaOrder::ascending_inverse, EtaOrder::degree_descending}) {
            auto z = middle_element(prof, P, order);
            EXPECT_TRUE(in_minuscule_double_coset(z, P.height(), P.rise()));
        }
    EXPECT_THROW(middle_element({{0, 2}, {2}}, parse_polygon("1/2x2"), EtaOrder::ascending), ValidationError);
    EXPECT_EQ(eta_of({{1, 0, 0}, {3}}, EtaOrder::ascending), (Permutation{2, 3, 1}));
}
