#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>

#include "fa/deep_continuous.hpp"
#include "fa/trajectory.hpp"

/// Discrete-time FA iterations: forward Euler on the two-layer system, the
/// midpoint scheme that conserves y = x²/(2d), and its L-layer extension.
namespace fa::discrete {

enum class Scheme { Euler, Midpoint2, MidpointDeep };

std::string_view to_string(Scheme s);

/// Admissible step size and the constants of the geometric rate
/// q(η) = 1 − lin·η + quad·η².
struct StepSizeBudget {
    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

    Scheme scheme = Scheme::Euler;
    double eta_max = kUnset;
    double s_star = kUnset;
    double max_p = kUnset;
    double m = kUnset;
    double c_inf = kUnset;
    double m_tilde = kUnset;
    double ell_inf = kUnset;
    double lin = kUnset;
    double quad = 0.0;
    /// Euler constants computed from an assumed ℓ_∞ rather than a converged run.
    bool provisional = false;

    double q_theory(double eta) const { return 1.0 - lin * eta + quad * eta * eta; }
};

/// P(x, S) = 2dλ − x³ + xS.
inline double region_p(double x, double s, double d, double lambda) {
    return 2.0 * d * lambda - x * x * x + x * s;
}

/// max of P over the invariant region {0 ≤ S ≤ x, P ≥ 0}: 2dλ + 4/27.
double region_max_p(double d, double lambda);

struct EulerRun {
    Trajectory traj;  // columns x, y, s, p, product, abs_error; time = step index
    /// First step at which S ≤ x or P ≥ −1e−12 fails.
    std::optional<std::size_t> first_region_violation;
};

/// Forward Euler on x ← x + ηd(λ − xy), y ← y + ηx(λ − xy) from zero, with the
/// partial sum S of squared increments tracked alongside.
EulerRun euler_run(double d, double lambda, double eta, std::size_t steps,
                   std::size_t record_every = 1);

/// The same iteration written as the (x, S) recursion
/// x ← x + (η/2)P(x, S), with y rebuilt as (x² − S)/(2d).
EulerRun euler_reduced_run(double d, double lambda, double eta, std::size_t steps,
                           std::size_t record_every = 1);

/// Euler budget. ℓ_∞ comes from a run at `eta_for_ell` (default 0.9·η_max)
/// iterated to convergence.
StepSizeBudget euler_budget(double d, double lambda, std::optional<double> eta_for_ell = std::nullopt);

/// Euler budget with ℓ_∞ replaced by its upper bound S*.
StepSizeBudget euler_budget_provisional(double d, double lambda);

/// Midpoint scheme: x ← x + ηd(λ − xy), y ← y + (η/2)(λ − xy)(x_new + x).
/// Columns x, y, product, abs_error, bound (NaN when η ≥ η_max).
Trajectory midpoint2_run(double d, double lambda, double eta, std::size_t steps,
                         std::size_t record_every = 1);

StepSizeBudget midpoint2_budget(double d, double lambda);

/// 3λ(1 − (3η/2)(2dλ)^{2/3})^t; rejects η ≥ η_max.
double midpoint2_error_bound(std::size_t t, double d, double lambda, double eta);

/// L-layer midpoint scheme from zero, layers updated bottom-up so that each
/// layer sees the midpoints of the layers below it.
Trajectory midpoint_deep_run(const deep::DeepParams& params, double eta, std::size_t steps,
                             std::size_t record_every = 1);

StepSizeBudget deep_budget(const deep::DeepParams& params);

}  // namespace fa::discrete
