#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "fa/cubic.hpp"
#include "fa/trajectory.hpp"

/// Continuous-time two-layer scalar FA flow
///   θ̇₁ = d(λ − θ₂θ₁),  θ̇₂ = (λ − θ₂θ₁)θ₁.
namespace fa::scalar {

struct ComponentParams {
    double lambda;
    double d;
    double theta1_0;
    double theta2_0;
    double K;  // θ₂(0) − θ₁(0)²/(2d)

    ComponentParams(double lambda, double d, double theta1_0, double theta2_0);

    /// θ₂(0) = θ₀²/(2d), which makes K = 0.
    static ComponentParams aligned(double lambda, double d, double theta0);
};

enum class CaseTag { DeltaPos, DeltaNeg, DeltaZero, LambdaZero };

std::string_view to_string(CaseTag tag);

struct IntegrateOptions {
    std::size_t record_every = 1;
};

/// Classic RK4 over [0, t_end]. Columns: theta1, theta2, product, abs_error.
/// Throws DivergenceError once any state magnitude exceeds 1e12.
Trajectory integrate_scalar(const ComponentParams& params, double t_end, double dt,
                            IntegrateOptions options = {});

/// K_t = θ₂(t) − θ₁(t)²/(2d) for every sample.
std::vector<double> conserved_k(const Trajectory& traj, double d);

/// Residual of the K = 0 implicit solution at (θ₁, t).
double implicit_residual_k0(double theta1, double t, const ComponentParams& params);

/// Residual of the three-logarithm implicit solution (Δ > 0) at (θ₁, t).
double implicit_residual_three_roots(double theta1, double t, const cubic::ThreeDistinct& roots,
                                     double theta0);

/// Time at which a K = 0 trajectory started at θ₀ < 0 crosses zero.
double vanishing_time(double theta0, double d, double lambda);

/// Zero crossing of θ₁ located on an RK4 run, refined by bisection on the
/// last step length.
double simulate_vanishing_time(double theta0, double d, double lambda, double dt = 1e-4);

CaseTag classify_case(const ComponentParams& params);

struct RateInfo {
    enum class Kind { Exponential, PowerLaw };
    Kind kind;
    double value;  // decay constant, or the polynomial exponent for PowerLaw
};

/// Asymptotic decay of |θ₁ − attractor|. For λ = K = 0 the decay is
/// polynomial, t^(−3/2) in the product.
RateInfo theoretical_rate(const ComponentParams& params);

/// Equilibrium of θ₁ the flow is heading to (Δ > 0 picks r₃ above r₂, r₁ below).
double attracting_root(const ComponentParams& params);

}  // namespace fa::scalar
