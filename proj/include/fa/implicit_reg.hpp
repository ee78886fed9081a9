#pragma once

#include <string_view>
#include <vector>

#include "json.hpp"

#include "fa/trajectory.hpp"

/// Incremental and anti-incremental learning: threshold times, plateau values
/// and the δ-rescaled transition of a Δ > 0 component.
namespace fa::implicit {

struct Roots3 {
    double r1, r2, r3;
};

enum class Side { Above, Below };

std::string_view to_string(Side s);
Side parse_side(std::string_view s);

/// T = 2/((r₃ − r₂)(r₂ − r₁)).
double threshold_time(double r1, double r2, double r3);

struct Plateau {
    double alpha;        // side above, heading to r₃
    double alpha_tilde;  // side below, heading to r₁
};

/// Closed-form asymptotic plateau values
///   α = r₃ − exp{(1 + r₃₁/r₂₁)ln r₃₂ + (r₃₂/r₂₁)ln(r₂₁/r₃₁)},
///   α̃ = r₁ + exp{(1 + r₃₁/r₃₂)ln r₂₁ + (r₂₁/r₃₂)ln(r₃₂/r₃₁)}.
Plateau plateau_values(double r1, double r2, double r3);

/// The δ → ∞ limit of θ₁(δT) on each side, solving
///   r₂₁ln|θ−r₃| − r₃₁ln|θ−r₂| + r₃₂ln|θ−r₁| = r₂₁ln r₃₂ + r₃₂ln r₂₁
/// on (r₂, r₃) and (r₁, r₂).
Plateau plateau_limit(double r1, double r2, double r3);

inline constexpr double kMaxDelta = 700.0;

/// θ̇₁ = −½(θ₁−r₁)(θ₁−r₂)(θ₁−r₃) from θ₀ = r₂ ± e^{−δ}, sampled in rescaled
/// time s = t/δ over [0, 2T]. Integrated in u = θ₁ − r₂ so the e^{−δ} offset
/// survives in double precision. dt ≤ 0 selects T/2000.
Trajectory delta_scaling_run(const Roots3& roots, double delta, Side side, double dt = 0.0);

struct TransitionSummary {
    double T_formula;
    double T_detected;     // first crossing of the midpoint between the plateaus
    double alpha_formula;  // closed form for the run's side
    double alpha_limit;    // exact δ → ∞ value for the run's side
    double theta1_at_T;
    double width_10_90;  // rescaled-time width of the 10%–90% transition
};

TransitionSummary summarize_transition(const Trajectory& traj, const Roots3& roots, Side side);

nlohmann::json to_json(const TransitionSummary& s);

/// Threshold time of each (d, K, λᵢ) component; every component must have Δ > 0.
std::vector<double> anti_regularization_ordering(const std::vector<double>& lambdas, double K, double d);

/// Vanishing time T₀ of each K = 0 component started at θ₀ < 0.
std::vector<double> k0_ordering(const std::vector<double>& lambdas, double d, double theta0);

/// True when larger λ always maps to larger value (`increasing`) or smaller value.
bool ordered_by_lambda(const std::vector<double>& lambdas, const std::vector<double>& values,
                       bool increasing);

}  // namespace fa::implicit
