#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pkern;
using field::GaloisField;

namespace {

std::vector<AffineWeylElement> box_elements(int h, int box)
{
    std::vector<AffineWeylElement> out;
    std::vector<int> lam(static_cast<std::size_t>(h), -box);
    for (;;) {
        for (const auto& u : all_permutations(h))
            out.emplace_back(lam, u);
        int i = 0;
        while (i < h && lam[i] == box)
            lam[i++] = -box;
        if (i == h)
            break;
        ++lam[i];
    }
    return out;
}

AffineWeylElement random_element(std::mt19937_64& g, int h, int box)
{
    std::vector<int> lam(static_cast<std::size_t>(h));
    std::uniform_int_distribution<int> d(-box, box);
    for (auto& v : lam)
        v = d(g);
    auto perms = all_permutations(h);
    return AffineWeylElement(lam, perms[g() % perms.size()]);
}

} // namespace

TEST(Permutation, OneLineConventions)
{
    Permutation u{2, 3, 1}, v{2, 1, 3};
    EXPECT_EQ((u * v)(1), u(v(1)));
    EXPECT_EQ(u * u.inverse(), Permutation::identity(3));
    EXPECT_EQ(u.to_string(), "[2,3,1]");
    EXPECT_EQ(finite_length(longest_element(4, all_simple(4))), 6);
    EXPECT_THROW(Permutation({1, 1, 2}), ValidationError);
    EXPECT_THROW(Permutation({0, 1}), ValidationError);
}

TEST(Permutation, CosetRepresentativesCount)
{
    // |^J W| = h! / (d! (h-d)!) for J = S \ {d}
    for (int h = 1; h <= 6; ++h)
        for (int d = 0; d <= h; ++d) {
            SimpleSubset J = all_simple(h);
            J.erase(d);
            long binom = 1;
            for (int k = 1; k <= d; ++k)
                binom = binom * (h - d + k) / k;
            EXPECT_EQ(static_cast<long>(min_coset_reps(h, J).size()), binom) << h << "," << d;
        }
}

TEST(AffineWeyl, ProductIsMatrixProduct)
{
    const auto& F = GaloisField::get(2, 1);
    std::mt19937_64 g(5);
    for (int trial = 0; trial < 100; ++trial) {
        int h = 2 + static_cast<int>(g() % 3);
        auto x = random_element(g, h, 2), y = random_element(g, h, 2);
        EXPECT_EQ(lab::matrix_of(x * y, F), lab::matrix_of(x, F) * lab::matrix_of(y, F));
        EXPECT_EQ(x * x.inverse(), AffineWeylElement::identity(h));
        EXPECT_EQ(lab::element_of(lab::matrix_of(x, F)), x);
    }
}

TEST(AffineWeyl, LengthMatchesIndexOracle)
{
    std::mt19937_64 g(17);
    for (int trial = 0; trial < 50; ++trial) {
        int h = 2 + static_cast<int>(g() % 3);
        auto x = random_element(g, h, 3);
        EXPECT_EQ(length(x), oracles::index_length(x)) << x.to_string();
    }
}

TEST(AffineWeyl, LengthMatchesBruteForceIndexForRankTwo)
{
    for (const auto& x : box_elements(2, 1))
        EXPECT_EQ(length(x), oracles::brute_force_index_h2(x, 3)) << x.to_string();
}

TEST(AffineWeyl, LengthMatchesWordLength)
{
    for (int h = 2; h <= 3; ++h) {
        auto dist = oracles::bfs_lengths(h, 4, 4 * h * h);
        for (const auto& x : box_elements(h, 2)) {
            auto it = dist.find(x);
            ASSERT_NE(it, dist.end()) << x.to_string();
            EXPECT_EQ(length(x), it->second) << x.to_string();
        }
    }
}

TEST(AffineWeyl, OmegaNormalizesIwahori)
{
    for (int h = 2; h <= 5; ++h) {
        auto w = omega(h);
        EXPECT_EQ(length(w), 0);
        EXPECT_EQ(w.det_valuation(), 1);
        EXPECT_EQ(omega_power(h, h), AffineWeylElement::translation(std::vector<int>(h, 1)));
        // omega s_i omega^{-1} = s_{i-1}
        for (int i = 1; i < h; ++i)
            EXPECT_EQ(w * simple_affine(h, i) * w.inverse(), simple_affine(h, i - 1));
    }
    EXPECT_EQ(simple_affine(2, 0).to_string(), "perm=[2,1];lam=(-1,1)");
}

TEST(AffineWeyl, ReducedDecompositionRoundTrip)
{
    std::mt19937_64 g(3);
    for (int trial = 0; trial < 200; ++trial) {
        int h = 2 + static_cast<int>(g() % 4);
        auto x = random_element(g, h, 2);
        auto d = reduced_decomposition(x);
        EXPECT_EQ(static_cast<int>(d.word.size()), length(x));
        EXPECT_EQ(from_decomposition(h, d), x);
    }
}

TEST(AffineWeyl, LengthProperties)
{
    std::mt19937_64 g(9);
    for (int trial = 0; trial < 200; ++trial) {
        int h = 2 + static_cast<int>(g() % 3);
        auto x = random_element(g, h, 2), y = random_element(g, h, 2);
        EXPECT_EQ(length(x), length(x.inverse()));
        EXPECT_LE(length(x * y), length(x) + length(y));
        for (int i = 0; i < h; ++i)
            EXPECT_EQ(std::abs(length(x * simple_affine(h, i)) - length(x)), 1);
    }
}

TEST(AffineWeyl, MinusculeDoubleCoset)
{
    EXPECT_TRUE(in_minuscule_double_coset(AffineWeylElement(std::vector<int>{1, 0}, Permutation{2, 1}), 2, 1));
    EXPECT_FALSE(in_minuscule_double_coset(AffineWeylElement(std::vector<int>{2, -1}, Permutation{2, 1}), 2, 1));
    EXPECT_FALSE(in_minuscule_double_coset(AffineWeylElement(std::vector<int>{1, 1}, Permutation{1, 2}), 2, 1));
}
