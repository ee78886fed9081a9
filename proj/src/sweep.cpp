#include "fa/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "fa/scalar_continuous.hpp"

namespace fa::sweep {

std::vector<ScalarRunSummary> scalar_random_sweep(const ScalarSweepConfig& cfg, bool parallel) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> box(-cfg.box, cfg.box);
    std::vector<std::pair<double, double>> inits(cfg.runs);
    for (auto& [a, b] : inits) {
        a = box(rng);
        b = box(rng);
    }

    auto one = [&](std::size_t i) {
        ScalarRunSummary s;
        s.theta1_0 = inits[i].first;
        s.theta2_0 = inits[i].second;
        const scalar::ComponentParams p(cfg.lambda, cfg.d, s.theta1_0, s.theta2_0);
        try {
            const auto traj = scalar::integrate_scalar(p, cfg.t_end, cfg.dt);
            const auto ks = scalar::conserved_k(traj, cfg.d);
            for (double k : ks) s.k_drift = std::max(s.k_drift, std::abs(k - ks.front()));
            s.final_error = traj.at(traj.size() - 1, traj.column_index("abs_error"));
        } catch (const DivergenceError&) {
            s.diverged = true;
            s.final_error = std::numeric_limits<double>::infinity();
        }
        return s;
    };
    return map(cfg.runs, one, parallel);
}

}  // namespace fa::sweep
