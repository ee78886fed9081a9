#include <gtest/gtest.h>

#include <stdexcept>

#include "fa/sweep.hpp"
#include "fa/trajectory.hpp"

TEST(Trajectory, PushAndQuery) {
    fa::Trajectory t({"a", "b"}, {"test", 0.1, {{"k", 1.0}}, 7});
    t.push(0.0, {1.0, 2.0});
    t.push(0.5, {3.0, 4.0});
    EXPECT_EQ(t.size(), 2u);
    EXPECT_EQ(t.column("b"), (std::vector<double>{2.0, 4.0}));
    EXPECT_EQ(t.column_index("a"), 0u);
    EXPECT_THROW(t.push(0.5, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(t.push(1.0, {1.0}), std::invalid_argument);
    EXPECT_THROW(t.column("c"), std::out_of_range);
    EXPECT_EQ(t.to_csv(), "t,a,b\n0,1,2\n0.5,3,4\n");
    t.add_column("c", std::vector<double>{5.0, 6.0});
    EXPECT_EQ(t.width(), 3u);
}

TEST(Sweep, ParallelMatchesSerial) {
    auto f = [](std::size_t i) { return static_cast<double>(i * i) / 3.0; };
    EXPECT_EQ(fa::sweep::map_serial(1000, f), fa::sweep::map_parallel(1000, f));
}

TEST(Sweep, LowestFailingIndexIsRethrown) {
    auto f = [](std::size_t i) -> int {
        if (i == 17 || i == 90) throw std::runtime_error(std::to_string(i));
        return 0;
    };
    try {
        fa::sweep::map_parallel(100, f);
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "17");
    }
}

TEST(Sweep, ScalarSweepReproducible) {
    fa::sweep::ScalarSweepConfig c;
    c.runs = 8;
    c.t_end = 5.0;
    const auto a = fa::sweep::scalar_random_sweep(c, true);
    const auto b = fa::sweep::scalar_random_sweep(c, false);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].theta1_0, b[i].theta1_0);
        EXPECT_EQ(a[i].final_error, b[i].final_error);
        EXPECT_LE(a[i].k_drift, 1e-8);
    }
}
