#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fa/implicit_reg.hpp"

using namespace fa::implicit;

TEST(ImplicitReg, ThresholdTime) {
    EXPECT_NEAR(threshold_time(-2.0, 1.0, 2.0), 2.0 / 3.0, 1e-15);
    EXPECT_THROW(threshold_time(1.0, 1.0, 2.0), std::invalid_argument);
}

TEST(ImplicitReg, PlateauValues) {
    EXPECT_NEAR(plateau_values(-2.0, 1.0, 2.0).alpha, 1.0914397035839, 1e-10);
    const auto lim = plateau_limit(-2.0, 1.0, 2.0);
    EXPECT_NEAR(lim.alpha, 1.5620083666909174, 1e-10);
    EXPECT_NEAR(lim.alpha_tilde, -0.71044953905119461, 1e-10);
}

TEST(ImplicitReg, SideParsing) {
    EXPECT_EQ(parse_side("above"), Side::Above);
    EXPECT_EQ(parse_side("below"), Side::Below);
    EXPECT_EQ(to_string(Side::Below), "below");
    EXPECT_THROW(parse_side("sideways"), std::invalid_argument);
}

TEST(ImplicitReg, DeltaGuard) {
    const Roots3 r{-2.0, 1.0, 2.0};
    EXPECT_THROW(delta_scaling_run(r, 800.0, Side::Above), std::invalid_argument);
    EXPECT_THROW(delta_scaling_run(r, 0.0, Side::Above), std::invalid_argument);
}

TEST(ImplicitReg, PlateauAtThresholdMatchesExactLimit) {
    const Roots3 r{-2.0, 1.0, 2.0};
    for (double delta : {10.0, 30.0, 100.0}) {
        const auto tr = delta_scaling_run(r, delta, Side::Above, 1e-5);
        const auto s = summarize_transition(tr, r, Side::Above);
        EXPECT_NEAR(s.theta1_at_T, s.alpha_limit, std::max(10.0 * std::exp(-delta), 1e-7)) << "delta " << delta;
        EXPECT_NEAR(s.T_detected, 2.0 / 3.0, 0.05 * 2.0 / 3.0);
    }
    const auto below = summarize_transition(delta_scaling_run(r, 100.0, Side::Below, 1e-5), r, Side::Below);
    EXPECT_NEAR(below.theta1_at_T, -0.71044953905119461, 1e-6);
    EXPECT_LT(below.width_10_90, 0.05);
}

TEST(ImplicitReg, Orderings) {
    const std::vector<double> lam{0.5, 1.0, 1.5};
    const auto T = anti_regularization_ordering(lam, -4.0, 0.5);
    EXPECT_TRUE(ordered_by_lambda(lam, T, true));
    EXPECT_THROW(anti_regularization_ordering({5.0}, -4.0, 0.5), std::invalid_argument);

    const std::vector<double> lk{10.0, 3.0, 1.0};
    const auto T0 = k0_ordering(lk, 2.0, -5.0);
    EXPECT_NEAR(T0[1], 0.42284581688825831, 1e-12);
    EXPECT_TRUE(ordered_by_lambda(lk, T0, false));
    EXPECT_TRUE(T0[0] < T0[1] && T0[1] < T0[2]);
}

TEST(ImplicitReg, SummaryJson) {
    const Roots3 r{-2.0, 1.0, 2.0};
    const auto j = to_json(summarize_transition(delta_scaling_run(r, 30.0, Side::Above), r, Side::Above));
    EXPECT_TRUE(j.contains("T_formula"));
    EXPECT_TRUE(j.contains("alpha_limit"));
}

TEST(ImplicitReg, ClosedFormLeavesItsInterval) {
    EXPECT_NEAR(plateau_values(-2.0, 1.0, 2.0).alpha_tilde, 1.797, 1e-3);
    const auto p = plateau_values(-20.0, 10.0, 20.0);
    EXPECT_FALSE(p.alpha > 10.0 && p.alpha < 20.0);
}

TEST(ImplicitRegProperty, ExactLimitStaysBetweenRoots) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-10.0, 10.0), gap(0.05, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double r1 = u(rng), r2 = r1 + gap(rng), r3 = r2 + gap(rng);
        const auto lim = plateau_limit(r1, r2, r3);
        EXPECT_GT(lim.alpha, r2);
        EXPECT_LE(lim.alpha, r3);
        EXPECT_GE(lim.alpha_tilde, r1);
        EXPECT_LT(lim.alpha_tilde, r2);
        EXPECT_GT(threshold_time(r1, r2, r3), 0.0);
    }
}
