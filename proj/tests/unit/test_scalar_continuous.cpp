#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fa/scalar_continuous.hpp"

using namespace fa::scalar;

TEST(ScalarFlow, AlignedStartConvergesToLambda) {
    const auto p = ComponentParams::aligned(3.0, 2.0, 0.0);
    EXPECT_EQ(p.K, 0.0);
    const auto tr = integrate_scalar(p, 10.0, 1e-3);
    EXPECT_NEAR(tr.at(tr.size() - 1, tr.column_index("product")), 3.0, 1e-12);
    EXPECT_EQ(tr.columns().size(), 4u);
    EXPECT_DOUBLE_EQ(tr.times().back(), 10.0);
}

TEST(ScalarFlow, EquilibriumStartStaysPut) {
    const double r = std::cbrt(12.0);
    const auto tr = integrate_scalar(ComponentParams::aligned(3.0, 2.0, r), 5.0, 1e-3);
    for (std::size_t k = 0; k < tr.size(); ++k) {
        ASSERT_NEAR(tr.at(k, 0), r, 1e-10);
        ASSERT_NEAR(tr.at(k, 2), 3.0, 1e-10);
    }
}

TEST(ScalarFlow, RecordEveryKeepsEndpoint) {
    const auto p = ComponentParams::aligned(1.0, 1.0, 0.5);
    const auto tr = integrate_scalar(p, 1.0, 1e-3, {7});
    EXPECT_DOUBLE_EQ(tr.times().back(), 1.0);
    EXPECT_LT(tr.size(), 200u);
}

TEST(ScalarFlow, RejectsBadInput) {
    const auto p = ComponentParams::aligned(1.0, 1.0, 0.5);
    EXPECT_THROW(integrate_scalar(p, 1.0, -1e-3), std::invalid_argument);
    EXPECT_THROW(ComponentParams(1.0, 0.0, 0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(ComponentParams(std::nan(""), 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST(ScalarFlow, VanishingTimeOracle) {
    // r = 1 from 2dλ = 1
    EXPECT_NEAR(vanishing_time(-1.0, 0.5, 1.0), 1.6712976965294421, 1e-12);
    EXPECT_NEAR(vanishing_time(-5.0, 2.0, 3.0), 0.42284581688825831, 1e-12);
    EXPECT_NEAR(vanishing_time(-1e6, 0.5, 1.0), 4.0 * std::numbers::pi / (3.0 * std::sqrt(3.0)), 1e-6);
    EXPECT_THROW(vanishing_time(1.0, 0.5, 1.0), std::invalid_argument);
}

TEST(ScalarFlow, SimulatedVanishingTimeMatches) {
    const double sim = simulate_vanishing_time(-1.0, 0.5, 1.0);
    EXPECT_NEAR(sim, 1.6712976965294421, 1e-8);
}

TEST(ScalarFlow, TheoreticalRates) {
    const auto k0 = theoretical_rate(ComponentParams::aligned(3.0, 2.0, 1.0));
    EXPECT_EQ(k0.kind, RateInfo::Kind::Exponential);
    EXPECT_NEAR(k0.value, 1.5 * std::pow(12.0, 2.0 / 3.0), 1e-12);

    const auto pl = theoretical_rate(ComponentParams::aligned(0.0, 1.0, 1.0));
    EXPECT_EQ(pl.kind, RateInfo::Kind::PowerLaw);
    EXPECT_DOUBLE_EQ(pl.value, 1.5);

    // d = 0.5, K = -4, λ = 1 heading to r3 from above r2
    const ComponentParams p(1.0, 0.5, 0.5, 0.25 - 4.0);
    const auto r = std::get<fa::cubic::ThreeDistinct>(fa::cubic::solve_fa_cubic(0.5, -4.0, 1.0));
    EXPECT_NEAR(theoretical_rate(p).value, 0.5 * (r.r3 - r.r2) * (r.r3 - r.r1), 1e-12);
    EXPECT_NEAR(attracting_root(p), r.r3, 1e-12);
    EXPECT_EQ(classify_case(p), CaseTag::DeltaPos);
}

TEST(ScalarFlow, RateMatchesLinearizationOnRun) {
    // λ = 0 with K < 0 still has an exponential approach governed by P'(r)/2
    const ComponentParams p(0.0, 1.0, 1.0, 0.5 - 1.0);
    const auto info = theoretical_rate(p);
    ASSERT_EQ(info.kind, RateInfo::Kind::Exponential);
    const auto tr = integrate_scalar(p, 20.0, 1e-3);
    const double root = attracting_root(p);
    const double e1 = std::abs(tr.at(8000, 0) - root), e2 = std::abs(tr.at(10000, 0) - root);
    EXPECT_NEAR(std::log(e1 / e2) / 2.0, info.value, 1e-3 * info.value);
}

TEST(ScalarFlow, ImplicitResiduals) {
    const auto p = ComponentParams::aligned(3.0, 2.0, -1.0);
    const auto tr = integrate_scalar(p, 1.0, 1e-4);
    for (std::size_t k = 0; k < tr.size(); k += 500)
        EXPECT_LE(std::abs(implicit_residual_k0(tr.at(k, 0), tr.time(k), p)), 1e-9);
    EXPECT_THROW(implicit_residual_k0(0.0, 0.0, ComponentParams(3.0, 2.0, 0.0, 1.0)), std::invalid_argument);
}

TEST(ScalarFlow, CaseClassification) {
    EXPECT_EQ(classify_case(ComponentParams::aligned(1.0, 1.0, 0.0)), CaseTag::DeltaNeg);
    EXPECT_EQ(classify_case(ComponentParams::aligned(0.0, 1.0, 1.0)), CaseTag::LambdaZero);
    EXPECT_EQ(classify_case(ComponentParams(2.0, 0.5, 0.0, -3.0)), CaseTag::DeltaZero);
}

TEST(ScalarFlowProperty, ConservedQuantityAlongRandomRuns) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-3.0, 3.0), dd(0.2, 3.0), ll(0.1, 3.0);
    for (int i = 0; i < 40; ++i) {
        const double d = dd(rng);
        const ComponentParams p(ll(rng), d, u(rng), u(rng));
        const auto tr = integrate_scalar(p, 5.0, 1e-3);
        const auto ks = conserved_k(tr, d);
        for (double k : ks) ASSERT_NEAR(k, p.K, 1e-8 * std::max(1.0, std::abs(p.K)));
    }
}

TEST(ScalarFlowProperty, MonotoneAndBounded) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const std::vector<ComponentParams> cases{ComponentParams::aligned(3.0, 2.0, 0.0),
                                             ComponentParams(1.0, 0.5, 0.0, -4.0),
                                             ComponentParams(1.0, 1.0, 0.0, 1.0)};
    for (const auto& base : cases)
        for (int i = 0; i < 100; ++i) {
            const double th0 = u(rng);
            const ComponentParams p(base.lambda, base.d, th0, th0 * th0 / (2.0 * base.d) + base.K);
            const auto tr = integrate_scalar(p, 3.0, 1e-3, {10});
            const auto th = tr.column("theta1");
            const double sign = th.back() >= th.front() ? 1.0 : -1.0;
            double cap = std::abs(th0);
            for (double r : fa::cubic::real_roots(fa::cubic::solve_fa_cubic(p.d, p.K, p.lambda)))
                cap = std::max(cap, std::abs(r));
            for (std::size_t k = 1; k < th.size(); ++k) {
                ASSERT_GE(sign * (th[k] - th[k - 1]), -1e-10);
                ASSERT_LE(std::abs(th[k]), cap + 1e-6);
            }
        }
}
