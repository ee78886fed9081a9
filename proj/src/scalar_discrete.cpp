#include "fa/scalar_discrete.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fa/cubic.hpp"

namespace fa::discrete {

namespace {

void check_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
}

void check_eta(double eta) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be finite and >= 0");
}

constexpr double kRegionSlack = 1e-12;

bool in_region(double x, double s, double p) {
    return s <= x + kRegionSlack * std::max(1.0, std::abs(x)) && p >= -kRegionSlack;
}

TrajectoryMeta meta_for(const char* scheme, double eta, double d, double lambda, std::size_t steps) {
    return {scheme, eta, {{"d", d}, {"lambda", lambda}, {"steps", static_cast<double>(steps)}}, std::nullopt};
}

// Shared driver for the two Euler formulations; `advance` updates (x, y, s).
template <class Advance>
EulerRun euler_drive(const char* scheme, double d, double lambda, double eta, std::size_t steps,
                     std::size_t record_every, Advance advance) {
    check_positive(d, "d");
    check_positive(lambda, "lambda");
    check_eta(eta);
    if (record_every == 0) throw std::invalid_argument("record_every must be positive");
    EulerRun out{Trajectory({"x", "y", "s", "p", "product", "abs_error"},
                            meta_for(scheme, eta, d, lambda, steps)),
                 std::nullopt};
    out.traj.reserve(steps / record_every + 2);
    double x = 0.0, y = 0.0, s = 0.0;
    auto record = [&](std::size_t t) {
        const double p = region_p(x, s, d, lambda);
        out.traj.push(static_cast<double>(t), {x, y, s, p, x * y, std::abs(x * y - lambda)});
    };
    record(0);
    for (std::size_t t = 1; t <= steps; ++t) {
        advance(x, y, s);
        if (!(std::abs(x) <= kDivergenceThreshold && std::abs(y) <= kDivergenceThreshold &&
              s <= kDivergenceThreshold))
            throw DivergenceError(std::string(scheme) + " iteration diverged", static_cast<double>(t));
        if (!out.first_region_violation && !in_region(x, s, region_p(x, s, d, lambda)))
            out.first_region_violation = t;
        if (t % record_every == 0 || t == steps) record(t);
    }
    return out;
}

// Iterates Euler until the product has converged; returns the final S.
double converged_partial_sum(double d, double lambda, double eta) {
    double x = 0.0, y = 0.0, s = 0.0;
    // past this point the remaining increments change S by less than rounding
    const double tol = 1e-14 * lambda;
    for (std::size_t t = 0; t < 50'000'000; ++t) {
        const double e = lambda - x * y;
        const double dx = eta * d * e;
        y += eta * x * e;
        x += dx;
        s += dx * dx;
        if (!std::isfinite(x)) throw DivergenceError("euler run for ell_inf diverged", static_cast<double>(t));
        if (t > 10 && std::abs(e) <= tol) break;
    }
    return s;
}

StepSizeBudget euler_constants(double d, double lambda, double ell_inf) {
    StepSizeBudget b;
    b.scheme = Scheme::Euler;
    b.s_star = cubic::s_star(d, lambda);
    b.max_p = region_max_p(d, lambda);
    b.eta_max = std::min(2.0 / (3.0 * (b.s_star + 1.0) * (b.s_star + 1.0)), 2.0 / b.max_p);
    const double c = 2.0 * d * lambda;
    const double c23 = std::cbrt(c) * std::cbrt(c);
    b.ell_inf = ell_inf;
    b.m = 0.5 * (b.s_star * b.s_star + b.s_star * ell_inf + c23);
    b.c_inf = ell_inf / (2.0 * c23 + c / ell_inf);
    b.m_tilde = 2.0 * ell_inf * b.m * b.m * b.c_inf;
    b.lin = b.m;
    b.quad = b.m_tilde;
    return b;
}

}  // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::Euler: return "euler";
        case Scheme::Midpoint2: return "midpoint";
        case Scheme::MidpointDeep: return "midpoint-deep";
    }
    return "unknown";
}

double region_max_p(double d, double lambda) {
    check_positive(d, "d");
    check_positive(lambda, "lambda");
    return 2.0 * d * lambda + 4.0 / 27.0;
}

EulerRun euler_run(double d, double lambda, double eta, std::size_t steps, std::size_t record_every) {
    return euler_drive("euler", d, lambda, eta, steps, record_every, [&](double& x, double& y, double& s) {
        const double e = lambda - x * y;
        const double dx = eta * d * e;
        y += eta * x * e;
        x += dx;
        s += dx * dx;
    });
}

EulerRun euler_reduced_run(double d, double lambda, double eta, std::size_t steps,
                           std::size_t record_every) {
    return euler_drive("euler_reduced", d, lambda, eta, steps, record_every,
                       [&](double& x, double& y, double& s) {
                           const double dx = 0.5 * eta * region_p(x, s, d, lambda);
                           x += dx;
                           s += dx * dx;
                           y = (x * x - s) / (2.0 * d);
                       });
}

StepSizeBudget euler_budget(double d, double lambda, std::optional<double> eta_for_ell) {
    const StepSizeBudget provisional = euler_budget_provisional(d, lambda);
    const double eta = eta_for_ell.value_or(0.9 * provisional.eta_max);
    check_positive(eta, "eta_for_ell");
    const double s_final = converged_partial_sum(d, lambda, eta);
    auto b = euler_constants(d, lambda, cubic::ell_of_s(s_final, d, lambda));
    b.provisional = false;
    return b;
}

StepSizeBudget euler_budget_provisional(double d, double lambda) {
    const double s_star = cubic::s_star(d, lambda);
    auto b = euler_constants(d, lambda, s_star);
    b.provisional = true;
    return b;
}

StepSizeBudget midpoint2_budget(double d, double lambda) {
    check_positive(d, "d");
    check_positive(lambda, "lambda");
    const double r = std::cbrt(2.0 * d * lambda);
    StepSizeBudget b;
    b.scheme = Scheme::Midpoint2;
    b.eta_max = 2.0 / (3.0 * r * r);
    b.lin = 1.5 * r * r;
    b.m = b.lin;
    return b;
}

double midpoint2_error_bound(std::size_t t, double d, double lambda, double eta) {
    const auto b = midpoint2_budget(d, lambda);
    check_eta(eta);
    if (!(eta < b.eta_max)) throw std::invalid_argument("eta must be below the midpoint budget");
    return 3.0 * lambda * std::pow(b.q_theory(eta), static_cast<double>(t));
}

Trajectory midpoint2_run(double d, double lambda, double eta, std::size_t steps, std::size_t record_every) {
    check_positive(d, "d");
    check_positive(lambda, "lambda");
    check_eta(eta);
    if (record_every == 0) throw std::invalid_argument("record_every must be positive");
    const auto budget = midpoint2_budget(d, lambda);
    const bool bounded = eta < budget.eta_max;
    const double q = budget.q_theory(eta);

    Trajectory traj({"x", "y", "product", "abs_error", "bound"}, meta_for("midpoint", eta, d, lambda, steps));
    traj.reserve(steps / record_every + 2);
    double x = 0.0, y = 0.0;
    auto record = [&](std::size_t t) {
        const double bound = bounded ? 3.0 * lambda * std::pow(q, static_cast<double>(t))
                                     : std::numeric_limits<double>::quiet_NaN();
        traj.push(static_cast<double>(t), {x, y, x * y, std::abs(x * y - lambda), bound});
    };
    record(0);
    for (std::size_t t = 1; t <= steps; ++t) {
        const double e = lambda - x * y;
        const double x_new = x + eta * d * e;
        y += 0.5 * eta * e * (x_new + x);
        x = x_new;
        if (!(std::abs(x) <= kDivergenceThreshold && std::abs(y) <= kDivergenceThreshold))
            throw DivergenceError("midpoint iteration diverged", static_cast<double>(t));
        if (t % record_every == 0 || t == steps) record(t);
    }
    return traj;
}

Trajectory midpoint_deep_run(const deep::DeepParams& params, double eta, std::size_t steps,
                             std::size_t record_every) {
    params.validate();
    check_eta(eta);
    if (record_every == 0) throw std::invalid_argument("record_every must be positive");
    const int L = params.L;
    TrajectoryMeta meta{"midpoint_deep", eta, {{"L", L}, {"lambda", params.lambda}}, std::nullopt};
    for (std::size_t i = 0; i < params.d.size(); ++i) meta.params["d" + std::to_string(i + 1)] = params.d[i];
    Trajectory traj(deep::deep_columns(L), std::move(meta));
    traj.reserve(steps / record_every + 2);

    std::vector<double> th(static_cast<std::size_t>(L), 0.0);
    std::vector<double> row(static_cast<std::size_t>(L) + 2);
    auto record = [&](std::size_t t) {
        double prod = 1.0;
        for (int l = 0; l < L; ++l) {
            row[l] = th[l];
            prod *= th[l];
        }
        row[L] = prod;
        row[L + 1] = std::abs(prod - params.lambda);
        traj.push(static_cast<double>(t), row);
    };
    record(0);
    for (std::size_t t = 1; t <= steps; ++t) {
        double prod = 1.0;
        for (double v : th) prod *= v;
        const double e = params.lambda - prod;
        double mid_below = 1.0;
        for (int l = 0; l < L; ++l) {
            const double next = th[l] + eta * params.d_at(l + 1) * e * mid_below;
            mid_below *= 0.5 * (next + th[l]);
            th[l] = next;
        }
        for (double v : th)
            if (!(std::abs(v) <= kDivergenceThreshold))
                throw DivergenceError("deep midpoint iteration diverged", static_cast<double>(t));
        if (t % record_every == 0 || t == steps) record(t);
    }
    return traj;
}

StepSizeBudget deep_budget(const deep::DeepParams& params) {
    const auto c = deep::layer_constants(params);
    check_positive(params.lambda, "lambda");
    // the telescoped discrete constants C_ℓ/2^{ℓ−1} multiply to the same 𝔎
    const double g = static_cast<double>(c.gamma);
    const double rate = params.d_at(1) * g * std::pow(c.frak_k * std::pow(params.lambda, g - 1.0), 1.0 / g);
    StepSizeBudget b;
    b.scheme = Scheme::MidpointDeep;
    b.eta_max = 1.0 / rate;
    b.lin = rate;
    b.m = rate;
    return b;
}

}  // namespace fa::discrete
