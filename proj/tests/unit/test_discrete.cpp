#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fa/cubic.hpp"
#include "fa/scalar_discrete.hpp"

using namespace fa::discrete;

TEST(Euler, BudgetOracle) {
    const auto b = euler_budget(1.0, 1.0);
    EXPECT_NEAR(b.eta_max, 0.09174684806061342, 1e-15);
    EXPECT_NEAR(b.s_star, 1.695620769559862, 1e-14);
    EXPECT_NEAR(b.max_p, 2.0 + 4.0 / 27.0, 1e-14);
    EXPECT_FALSE(b.provisional);
    EXPECT_TRUE(euler_budget_provisional(1.0, 1.0).provisional);
    EXPECT_NEAR(region_max_p(1.0, 1.0), 2.0 + 4.0 / 27.0, 1e-14);
}

TEST(Euler, ConstantsSatisfyTheirDefinitions) {
    const double d = 2.0, lambda = 1.0;
    const auto b = euler_budget(d, lambda);
    const double c = std::cbrt(2.0 * d * lambda);
    EXPECT_NEAR(b.m, (b.s_star * b.s_star + b.s_star * b.ell_inf + c * c) / 2.0, 1e-12);
    EXPECT_NEAR(b.c_inf, b.ell_inf / (2.0 * c * c + 2.0 * d * lambda / b.ell_inf), 1e-12);
    EXPECT_NEAR(b.m_tilde, 2.0 * b.ell_inf * b.m * b.m * b.c_inf, 1e-12);
    EXPECT_NEAR(b.q_theory(0.05), 1.0 - 0.05 * b.m + 0.0025 * b.m_tilde, 1e-14);
}

TEST(Euler, OriginalAndReducedRecurrencesAgree) {
    const double d = 0.5, lambda = 3.0;
    const double eta = 0.9 * euler_budget(d, lambda).eta_max;
    const auto a = euler_run(d, lambda, eta, 2000);
    const auto b = euler_reduced_run(d, lambda, eta, 2000);
    for (std::size_t k = 0; k < a.traj.size(); ++k) {
        ASSERT_NEAR(a.traj.at(k, 0), b.traj.at(k, 0), 1e-12);
        ASSERT_NEAR(a.traj.at(k, 1), b.traj.at(k, 1), 1e-12);
    }
}

TEST(Midpoint, Budget) {
    EXPECT_NEAR(midpoint2_budget(0.5, 1.0).eta_max, 2.0 / 3.0, 1e-15);
    const auto b = midpoint2_budget(2.0, 3.0);
    EXPECT_NEAR(b.q_theory(0.9 * b.eta_max), 0.1, 1e-14);
    EXPECT_THROW(midpoint2_error_bound(3, 2.0, 3.0, b.eta_max), std::invalid_argument);
    EXPECT_NEAR(midpoint2_error_bound(0, 2.0, 3.0, 0.5 * b.eta_max), 9.0, 1e-14);
}

TEST(Midpoint, DeepBudgetSpecialisesToTwoLayers) {
    for (double d : {0.5, 2.0})
        for (double lambda : {0.5, 3.0}) {
            const auto deep = deep_budget(fa::deep::DeepParams{2, lambda, {d}, 0.0});
            const auto two = midpoint2_budget(d, lambda);
            EXPECT_NEAR(deep.eta_max, two.eta_max, 1e-14 * two.eta_max);
            EXPECT_NEAR(deep.q_theory(0.5 * deep.eta_max), two.q_theory(0.5 * two.eta_max), 1e-13);
        }
}

TEST(Midpoint, BoundColumnIsNanAboveBudget) {
    const auto b = midpoint2_budget(1.0, 1.0);
    const auto tr = midpoint2_run(1.0, 1.0, 1.1 * b.eta_max, 5);
    EXPECT_TRUE(std::isnan(tr.at(2, tr.column_index("bound"))));
}

TEST(Midpoint, DeepRunConverges) {
    const fa::deep::DeepParams p{3, 1.0, {2.0, 2.5}, 0.0};
    const auto b = deep_budget(p);
    const auto tr = midpoint_deep_run(p, 0.5 * b.eta_max, 400);
    EXPECT_LE(tr.at(tr.size() - 1, tr.column_index("abs_error")), 1e-12);
}

TEST(DiscreteProperty, MidpointConservesOnRandomParameters) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dd(0.1, 4.0), ll(0.1, 4.0), ff(0.05, 0.99);
    for (int i = 0; i < 200; ++i) {
        const double d = dd(rng), lambda = ll(rng);
        const double f = ff(rng);
        const double eta = f * midpoint2_budget(d, lambda).eta_max;
        const auto tr = midpoint2_run(d, lambda, eta, 300);
        for (std::size_t k = 0; k < tr.size(); ++k) {
            const double x = tr.at(k, 0);
            ASSERT_LE(std::abs(tr.at(k, 1) - x * x / (2.0 * d)), 1e-12 * std::max(1.0, x * x));
        }
        // the rate with half the linear coefficient
        EXPECT_LE(tr.at(tr.size() - 1, 3), 3.0 * lambda * std::pow(1.0 - f / 3.0, 300.0) + 1e-9);
    }
}

TEST(DiscreteProperty, EulerStaysInRegionBelowBudget) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> dd(0.2, 3.0), ll(0.2, 3.0), ff(0.05, 0.99);
    for (int i = 0; i < 100; ++i) {
        const double d = dd(rng), lambda = ll(rng);
        const double eta = ff(rng) * euler_budget_provisional(d, lambda).eta_max;
        const auto run = euler_run(d, lambda, eta, 5000, 50);
        EXPECT_FALSE(run.first_region_violation) << "d=" << d << " λ=" << lambda;
        const double s_star = fa::cubic::s_star(d, lambda);
        for (std::size_t k = 0; k < run.traj.size(); ++k) {
            const auto s = run.traj.state(k);
            ASSERT_LE(s[0], s_star + 1e-9);
            ASSERT_LE(s[2], s[0] + 1e-12);
        }
    }
}

TEST(Euler, MaxPMatchesGridSearch) {
    for (double d : {0.5, 1.0, 2.0})
        for (double lambda : {0.5, 1.0, 3.0}) {
            const double s_star = fa::cubic::s_star(d, lambda);
            double best = -1.0;
            for (int i = 0; i <= 400; ++i) {
                const double x = s_star * i / 400.0;
                for (int j = 0; j <= 400; ++j) {
                    const double s = x * j / 400.0;
                    const double p = region_p(x, s, d, lambda);
                    if (p >= 0.0) best = std::max(best, p);
                }
            }
            EXPECT_NEAR(region_max_p(d, lambda), best, 1e-3) << "d=" << d << " λ=" << lambda;
            EXPECT_GE(region_max_p(d, lambda), best);
        }
}
