#include "fa/implicit_reg.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fa/cubic.hpp"
#include "fa/detail/root_bracket.hpp"
#include "fa/rk4.hpp"
#include "fa/scalar_continuous.hpp"

namespace fa::implicit {

namespace {

void check_sorted(double r1, double r2, double r3) {
    if (!(r1 < r2 && r2 < r3) || !std::isfinite(r1) || !std::isfinite(r3))
        throw std::invalid_argument("roots must be finite and strictly increasing");
}

// Rescaled-time value where the sampled θ₁ first reaches `level`.
double first_crossing(const Trajectory& traj, double level, bool upward) {
    const auto& t = traj.times();
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double a = traj.at(k - 1, 0);
        const double b = traj.at(k, 0);
        const bool hit = upward ? (a < level && b >= level) : (a > level && b <= level);
        if (hit) return t[k - 1] + (level - a) / (b - a) * (t[k] - t[k - 1]);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double sample_at(const Trajectory& traj, double s) {
    const auto& t = traj.times();
    for (std::size_t k = 1; k < traj.size(); ++k) {
        if (t[k] >= s) {
            const double w = (s - t[k - 1]) / (t[k] - t[k - 1]);
            return (1.0 - w) * traj.at(k - 1, 0) + w * traj.at(k, 0);
        }
    }
    return traj.at(traj.size() - 1, 0);
}

}  // namespace

std::string_view to_string(Side s) { return s == Side::Above ? "above" : "below"; }

Side parse_side(std::string_view s) {
    if (s == "above") return Side::Above;
    if (s == "below") return Side::Below;
    throw std::invalid_argument("side must be 'above' or 'below'");
}

double threshold_time(double r1, double r2, double r3) {
    check_sorted(r1, r2, r3);
    return 2.0 / ((r3 - r2) * (r2 - r1));
}

Plateau plateau_values(double r1, double r2, double r3) {
    check_sorted(r1, r2, r3);
    const double r21 = r2 - r1, r31 = r3 - r1, r32 = r3 - r2;
    const double alpha = r3 - std::exp((1.0 + r31 / r21) * std::log(r32) + (r32 / r21) * std::log(r21 / r31));
    const double alpha_tilde =
        r1 + std::exp((1.0 + r31 / r32) * std::log(r21) + (r21 / r32) * std::log(r32 / r31));
    return {alpha, alpha_tilde};
}

Plateau plateau_limit(double r1, double r2, double r3) {
    check_sorted(r1, r2, r3);
    const double r21 = r2 - r1, r31 = r3 - r1, r32 = r3 - r2;
    const double rhs = r21 * std::log(r32) + r32 * std::log(r21);
    auto h = [&](double th) {
        return r21 * std::log(std::abs(th - r3)) - r31 * std::log(std::abs(th - r2)) +
               r32 * std::log(std::abs(th - r1)) - rhs;
    };
    // h runs from +inf to −inf across (r₂, r₃) and from −inf to +inf across (r₁, r₂).
    // With a lopsided gap the root can sit within one ulp of r₃ or r₁.
    const double inf = std::numeric_limits<double>::infinity();
    const double a_lo = std::nextafter(r2, inf), a_hi = std::nextafter(r3, -inf);
    const double b_lo = std::nextafter(r1, inf), b_hi = std::nextafter(r2, -inf);
    const double above = h(a_hi) >= 0.0 ? r3 : detail::bisect(h, a_lo, a_hi, 400);
    const double below = h(b_lo) >= 0.0 ? r1 : detail::bisect(h, b_lo, b_hi, 400);
    return {above, below};
}

Trajectory delta_scaling_run(const Roots3& roots, double delta, Side side, double dt) {
    const double T = threshold_time(roots.r1, roots.r2, roots.r3);
    if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
    if (delta > kMaxDelta) throw std::invalid_argument("delta above 700 underflows exp(-delta)");
    if (!(dt > 0.0)) dt = T / 2000.0;

    const double r21 = roots.r2 - roots.r1, r32 = roots.r3 - roots.r2;
    const double u0 = (side == Side::Above ? 1.0 : -1.0) * std::exp(-delta);
    auto rhs = [&](const std::array<double, 1>& u) {
        return std::array<double, 1>{-0.5 * delta * (u[0] + r21) * u[0] * (u[0] - r32)};
    };

    const auto sched = StepSchedule::make(2.0 * T, dt);
    TrajectoryMeta meta{"rk4_rescaled", dt,
                        {{"r1", roots.r1}, {"r2", roots.r2}, {"r3", roots.r3}, {"delta", delta},
                         {"side_above", side == Side::Above ? 1.0 : 0.0}, {"T", T}},
                        std::nullopt};
    Trajectory traj({"theta1"}, std::move(meta));
    traj.reserve(sched.count + 1);
    std::array<double, 1> u{u0};
    traj.push(0.0, {roots.r2 + u[0]});
    for (std::size_t k = 0; k < sched.count; ++k) {
        u = rk4_step(rhs, u, sched.step(k));
        if (!(std::abs(u[0]) <= kDivergenceThreshold))
            throw DivergenceError("rescaled flow diverged", sched.time(k + 1));
        traj.push(sched.time(k + 1), {roots.r2 + u[0]});
    }
    return traj;
}

TransitionSummary summarize_transition(const Trajectory& traj, const Roots3& roots, Side side) {
    const double T = threshold_time(roots.r1, roots.r2, roots.r3);
    const bool up = side == Side::Above;
    const double target = up ? roots.r3 : roots.r1;
    const double jump = target - roots.r2;
    const auto formula = plateau_values(roots.r1, roots.r2, roots.r3);
    const auto limit = plateau_limit(roots.r1, roots.r2, roots.r3);

    TransitionSummary s{};
    s.T_formula = T;
    s.T_detected = first_crossing(traj, roots.r2 + 0.5 * jump, up);
    s.alpha_formula = up ? formula.alpha : formula.alpha_tilde;
    s.alpha_limit = up ? limit.alpha : limit.alpha_tilde;
    s.theta1_at_T = sample_at(traj, T);
    s.width_10_90 =
        first_crossing(traj, roots.r2 + 0.9 * jump, up) - first_crossing(traj, roots.r2 + 0.1 * jump, up);
    return s;
}

nlohmann::json to_json(const TransitionSummary& s) {
    return {{"T_formula", s.T_formula},       {"T_detected", s.T_detected},
            {"alpha_formula", s.alpha_formula}, {"alpha_limit", s.alpha_limit},
            {"theta1_at_T", s.theta1_at_T},   {"width_10_90", s.width_10_90}};
}

std::vector<double> anti_regularization_ordering(const std::vector<double>& lambdas, double K, double d) {
    std::vector<double> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        const auto roots = cubic::solve_fa_cubic(d, K, lambda);
        const auto* three = std::get_if<cubic::ThreeDistinct>(&roots);
        if (!three)
            throw std::invalid_argument("component with lambda = " + std::to_string(lambda) +
                                        " does not have three distinct roots");
        out.push_back(threshold_time(three->r1, three->r2, three->r3));
    }
    return out;
}

std::vector<double> k0_ordering(const std::vector<double>& lambdas, double d, double theta0) {
    std::vector<double> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) out.push_back(scalar::vanishing_time(theta0, d, lambda));
    return out;
}

bool ordered_by_lambda(const std::vector<double>& lambdas, const std::vector<double>& values,
                       bool increasing) {
    if (lambdas.size() != values.size()) throw std::invalid_argument("length mismatch");
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = 0; j < lambdas.size(); ++j)
            if (lambdas[i] > lambdas[j] && !(increasing ? values[i] > values[j] : values[i] < values[j]))
                return false;
    return true;
}

}  // namespace fa::implicit
