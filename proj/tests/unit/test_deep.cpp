#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fa/deep_continuous.hpp"

using namespace fa::deep;

TEST(Deep, LayerConstantsThreeLayers) {
    const DeepParams p{3, 1.0, {2.0, 2.5}, 0.0};
    const auto c = layer_constants(p);
    ASSERT_EQ(c.C.size(), 3u);
    EXPECT_DOUBLE_EQ(c.C[0], 1.0);
    EXPECT_DOUBLE_EQ(c.C[1], 1.25);
    EXPECT_DOUBLE_EQ(c.C[2], 0.3125);
    EXPECT_DOUBLE_EQ(c.frak_k, 0.048828125);
    EXPECT_EQ(c.gamma, 7);
    EXPECT_NEAR(c.fixed_point(1.0), std::pow(1.0 / 0.048828125, 1.0 / 7.0), 1e-14);
}

TEST(Deep, TwoLayersReduceToScalarCubic) {
    const DeepParams p{2, 3.0, {2.0}, 0.0};
    const auto c = layer_constants(p);
    EXPECT_DOUBLE_EQ(c.frak_k, 1.0 / 4.0);
    EXPECT_EQ(c.gamma, 3);
    EXPECT_NEAR(c.fixed_point(3.0), std::cbrt(12.0), 1e-14);
}

TEST(Deep, Validation) {
    EXPECT_THROW((DeepParams{1, 1.0, {}, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((DeepParams{3, 1.0, {2.0}, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((DeepParams{3, 1.0, {2.0, -1.0}, 0.0}.validate()), std::invalid_argument);
    EXPECT_THROW((DeepParams{21, 1.0, std::vector<double>(20, 1.0), 0.0}.validate()), std::invalid_argument);
    EXPECT_DOUBLE_EQ((DeepParams{3, 1.0, {2.0, 2.5}, 0.0}.d_at(3)), 1.0);
}

TEST(Deep, FullAndReducedAgree) {
    const DeepParams p{3, 1.0, {2.0, 2.5}, 0.5};
    const auto full = integrate_deep_full(p, 10.0, 1e-3);
    const auto red = integrate_deep_reduced(p, 10.0, 1e-3);
    ASSERT_EQ(full.size(), red.size());
    EXPECT_EQ(full.columns(), deep_columns(3));
    for (std::size_t k = 0; k < full.size(); k += 100)
        for (std::size_t j = 0; j < full.width(); ++j) ASSERT_NEAR(full.at(k, j), red.at(k, j), 1e-8);
    EXPECT_LE(check_power_relation(full, layer_constants(p)), 1e-8);
    EXPECT_NEAR(full.at(full.size() - 1, full.column_index("product")), 1.0, 1e-10);
}

TEST(DeepProperty, PowerRelationHoldsForRandomDepths) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dd(0.5, 3.0), th(-1.0, 1.0);
    for (int L = 2; L <= 5; ++L) {
        DeepParams p{L, 1.0, {}, th(rng)};
        for (int l = 1; l < L; ++l) p.d.push_back(dd(rng));
        const auto c = layer_constants(p);
        const auto s0 = initial_state(p, c);
        for (int l = 1; l <= L; ++l)
            EXPECT_NEAR(s0[l - 1], c.power_coefficient(l) * std::pow(p.theta1_0, std::pow(2.0, l - 1)), 1e-14);
        const auto tr = integrate_deep_full(p, 2.0, 1e-3, 10);
        EXPECT_LE(check_power_relation(tr, c), 1e-8) << "L=" << L;
    }
}
