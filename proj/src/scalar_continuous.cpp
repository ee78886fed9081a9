#include "fa/scalar_continuous.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fa/rk4.hpp"

namespace fa::scalar {

namespace {

using State = std::array<double, 2>;

void check_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

State flow(const State& s, double d, double lambda) {
    const double e = lambda - s[1] * s[0];
    return {d * e, e * s[0]};
}

bool escaped(const State& s) {
    return !(std::abs(s[0]) <= kDivergenceThreshold && std::abs(s[1]) <= kDivergenceThreshold);
}

// Antiderivative of 2/(r³ − θ³).
double k0_primitive(double theta, double r) {
    const double r2 = r * r;
    const double s3 = std::sqrt(3.0);
    return -(2.0 / (3.0 * r2)) * std::log(std::abs(theta - r)) +
           (1.0 / (3.0 * r2)) * std::log(theta * theta + r * theta + r2) +
           (2.0 / (r2 * s3)) * std::atan((2.0 * theta + r) / (r * s3));
}

// Antiderivative of 1/((θ−r₁)(θ−r₂)(θ−r₃)).
double three_log_primitive(double theta, const cubic::ThreeDistinct& r) {
    const double r21 = r.r2 - r.r1;
    const double r31 = r.r3 - r.r1;
    const double r32 = r.r3 - r.r2;
    return std::log(std::abs(theta - r.r3)) / (r32 * r31) -
           std::log(std::abs(theta - r.r2)) / (r32 * r21) +
           std::log(std::abs(theta - r.r1)) / (r31 * r21);
}

}  // namespace

ComponentParams::ComponentParams(double lambda_, double d_, double theta1_0_, double theta2_0_)
    : lambda(lambda_), d(d_), theta1_0(theta1_0_), theta2_0(theta2_0_),
      K(theta2_0_ - theta1_0_ * theta1_0_ / (2.0 * d_)) {
    check_finite(lambda, "lambda");
    check_finite(d, "d");
    check_finite(theta1_0, "theta1_0");
    check_finite(theta2_0, "theta2_0");
    if (!(d > 0.0)) throw std::invalid_argument("FA constant d must be positive");
}

ComponentParams ComponentParams::aligned(double lambda, double d, double theta0) {
    ComponentParams p(lambda, d, theta0, theta0 * theta0 / (2.0 * d));
    p.K = 0.0;
    return p;
}

std::string_view to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::DeltaPos: return "delta_pos";
        case CaseTag::DeltaNeg: return "delta_neg";
        case CaseTag::DeltaZero: return "delta_zero";
        case CaseTag::LambdaZero: return "lambda_zero";
    }
    return "unknown";
}

Trajectory integrate_scalar(const ComponentParams& params, double t_end, double dt,
                            IntegrateOptions options) {
    if (options.record_every == 0) throw std::invalid_argument("record_every must be positive");
    const auto sched = StepSchedule::make(t_end, dt);
    TrajectoryMeta meta{"rk4", dt,
                        {{"lambda", params.lambda},
                         {"d", params.d},
                         {"theta1_0", params.theta1_0},
                         {"theta2_0", params.theta2_0},
                         {"K", params.K},
                         {"t_end", t_end}},
                        std::nullopt};
    Trajectory traj({"theta1", "theta2", "product", "abs_error"}, std::move(meta));
    traj.reserve(sched.count / options.record_every + 2);

    auto record = [&](double t, const State& s) {
        const double prod = s[0] * s[1];
        traj.push(t, {s[0], s[1], prod, std::abs(prod - params.lambda)});
    };
    auto rhs = [&](const State& s) { return flow(s, params.d, params.lambda); };

    State s{params.theta1_0, params.theta2_0};
    record(0.0, s);
    for (std::size_t k = 0; k < sched.count; ++k) {
        s = rk4_step(rhs, s, sched.step(k));
        const double t = sched.time(k + 1);
        if (escaped(s)) throw DivergenceError("scalar flow diverged", t);
        if ((k + 1) % options.record_every == 0 || k + 1 == sched.count) record(t, s);
    }
    return traj;
}

std::vector<double> conserved_k(const Trajectory& traj, double d) {
    const auto c1 = traj.column_index("theta1");
    const auto c2 = traj.column_index("theta2");
    std::vector<double> out(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t1 = traj.at(k, c1);
        out[k] = traj.at(k, c2) - t1 * t1 / (2.0 * d);
    }
    return out;
}

double implicit_residual_k0(double theta1, double t, const ComponentParams& params) {
    if (params.K != 0.0) throw std::invalid_argument("K = 0 residual needs aligned parameters");
    if (!(params.lambda > 0.0)) throw std::invalid_argument("K = 0 residual needs lambda > 0");
    const double r = std::cbrt(2.0 * params.d * params.lambda);
    if (params.theta1_0 == r) throw std::invalid_argument("theta0 sits on the equilibrium");
    if (theta1 == r) throw std::invalid_argument("theta1 sits on the log singularity");
    return k0_primitive(theta1, r) - k0_primitive(params.theta1_0, r) - t;
}

double implicit_residual_three_roots(double theta1, double t, const cubic::ThreeDistinct& roots,
                                     double theta0) {
    if (!(roots.r1 < roots.r2 && roots.r2 < roots.r3))
        throw std::invalid_argument("roots must be strictly increasing");
    for (double r : {roots.r1, roots.r2, roots.r3})
        if (theta1 == r || theta0 == r) throw std::invalid_argument("state collides with a root");
    return three_log_primitive(theta1, roots) - three_log_primitive(theta0, roots) + 0.5 * t;
}

double vanishing_time(double theta0, double d, double lambda) {
    if (!(theta0 < 0.0)) throw std::invalid_argument("vanishing time needs theta0 < 0");
    if (!(d > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("need d, lambda > 0");
    const double r = std::cbrt(2.0 * d * lambda);
    const double r2 = r * r;
    const double s3 = std::sqrt(3.0);
    return std::numbers::pi / (3.0 * s3 * r2) +
           (1.0 / (3.0 * r2)) *
               std::log((r - theta0) * (r - theta0) / (theta0 * theta0 + r * theta0 + r2)) -
           (2.0 / (r2 * s3)) * std::atan((2.0 * theta0 + r) / (r * s3));
}

double simulate_vanishing_time(double theta0, double d, double lambda, double dt) {
    if (!(theta0 < 0.0)) throw std::invalid_argument("vanishing time needs theta0 < 0");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const auto p = ComponentParams::aligned(lambda, d, theta0);
    auto rhs = [&](const State& s) { return flow(s, p.d, p.lambda); };
    State s{p.theta1_0, p.theta2_0};
    double t = 0.0;
    // the flow reaches zero well before 10·T₀
    const double horizon = 10.0 * vanishing_time(theta0, d, lambda) + 10.0;
    while (t < horizon) {
        const State next = rk4_step(rhs, s, dt);
        if (next[0] >= 0.0) {
            double lo = 0.0, hi = dt;
            for (int i = 0; i < 200 && hi - lo > 1e-16 * (1.0 + t); ++i) {
                const double mid = 0.5 * (lo + hi);
                (rk4_step(rhs, s, mid)[0] >= 0.0 ? hi : lo) = mid;
            }
            return t + 0.5 * (lo + hi);
        }
        s = next;
        t += dt;
        if (escaped(s)) throw DivergenceError("scalar flow diverged", t);
    }
    throw std::runtime_error("no zero crossing found");
}

CaseTag classify_case(const ComponentParams& params) {
    if (params.lambda == 0.0) return CaseTag::LambdaZero;
    switch (cubic::discriminant(params.d, params.K, params.lambda).sign) {
        case 1: return CaseTag::DeltaPos;
        case -1: return CaseTag::DeltaNeg;
        default: return CaseTag::DeltaZero;
    }
}

double attracting_root(const ComponentParams& params) {
    const auto roots = cubic::solve_fa_cubic(params.d, params.K, params.lambda);
    const double t0 = params.theta1_0;
    if (const auto* one = std::get_if<cubic::OneReal>(&roots)) return one->r;
    if (const auto* three = std::get_if<cubic::ThreeDistinct>(&roots)) {
        if (t0 == three->r2) return three->r2;
        return t0 > three->r2 ? three->r3 : three->r1;
    }
    if (const auto* sd = std::get_if<cubic::SimpleAndDouble>(&roots)) {
        // θ̇ = −½(θ − r_s)(θ − r_d)², so r_d is approached only from the far side of r_s
        const bool toward_simple = (sd->simple > sd->dbl) ? t0 > sd->dbl : t0 < sd->dbl;
        return toward_simple ? sd->simple : sd->dbl;
    }
    return 0.0;
}

RateInfo theoretical_rate(const ComponentParams& params) {
    if (params.lambda == 0.0 && params.K == 0.0) return {RateInfo::Kind::PowerLaw, 1.5};
    const CaseTag tag = classify_case(params);
    if (tag == CaseTag::DeltaZero)
        throw std::invalid_argument("no exponential rate at a double root");
    const auto roots = cubic::solve_fa_cubic(params.d, params.K, params.lambda);
    if (const auto* three = std::get_if<cubic::ThreeDistinct>(&roots)) {
        const double r21 = three->r2 - three->r1;
        const double r31 = three->r3 - three->r1;
        const double r32 = three->r3 - three->r2;
        if (params.theta1_0 == three->r2)
            throw std::invalid_argument("theta0 on the unstable root has no decay rate");
        return {RateInfo::Kind::Exponential,
                params.theta1_0 > three->r2 ? 0.5 * r32 * r31 : 0.5 * r21 * r31};
    }
    // half the slope of x³ + 2dKx − 2dλ at the real root, i.e. (r³ + dλ)/r for r ≠ 0
    const double r = std::get<cubic::OneReal>(roots).r;
    return {RateInfo::Kind::Exponential, 0.5 * (3.0 * r * r + 2.0 * params.d * params.K)};
}

}  // namespace fa::scalar
