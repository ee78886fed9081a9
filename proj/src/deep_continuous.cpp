#include "fa/deep_continuous.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fa/rk4.hpp"

namespace fa::deep {

namespace {

double ipow(double x, long long n) {
    double out = 1.0;
    for (long long i = 0; i < n; ++i) out *= x;
    return out;
}

std::vector<double> full_rhs(const std::vector<double>& th, const DeepParams& p) {
    double prod = 1.0;
    for (double v : th) prod *= v;
    const double e = p.lambda - prod;
    std::vector<double> out(th.size());
    double below = 1.0;
    for (int l = 0; l < p.L; ++l) {
        out[l] = p.d_at(l + 1) * e * below;
        below *= th[l];
    }
    return out;
}

TrajectoryMeta make_meta(const DeepParams& p, const char* scheme, double dt, double t_end) {
    TrajectoryMeta meta{scheme, dt, {{"L", p.L}, {"lambda", p.lambda}, {"theta1_0", p.theta1_0},
                                     {"t_end", t_end}}, std::nullopt};
    for (std::size_t i = 0; i < p.d.size(); ++i) meta.params["d" + std::to_string(i + 1)] = p.d[i];
    return meta;
}

void push_layers(Trajectory& traj, double t, const std::vector<double>& th, double lambda) {
    std::vector<double> row(th);
    double prod = 1.0;
    for (double v : th) prod *= v;
    row.push_back(prod);
    row.push_back(std::abs(prod - lambda));
    traj.push(t, row);
}

}  // namespace

double DeepParams::d_at(int layer) const {
    if (layer < 1 || layer > L) throw std::out_of_range("layer index");
    return layer == L ? 1.0 : d[static_cast<std::size_t>(layer - 1)];
}

void DeepParams::validate() const {
    if (L < 2) throw std::invalid_argument("depth L must be at least 2");
    if (L > 20) throw std::invalid_argument("depth L too large for 2^L - 1 exponents");
    if (d.size() != static_cast<std::size_t>(L - 1))
        throw std::invalid_argument("need exactly L - 1 FA constants");
    for (double v : d)
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("FA constants must be positive");
    if (!std::isfinite(lambda) || !std::isfinite(theta1_0))
        throw std::invalid_argument("lambda and theta1_0 must be finite");
}

double DeepLayerConstants::power_coefficient(int layer) const {
    return C.at(static_cast<std::size_t>(layer - 1)) / std::ldexp(1.0, layer - 1);
}

double DeepLayerConstants::fixed_point(double lambda) const {
    const double ratio = lambda / frak_k;
    return std::copysign(std::pow(std::abs(ratio), 1.0 / gamma), ratio);
}

DeepLayerConstants layer_constants(const DeepParams& params) {
    params.validate();
    DeepLayerConstants c;
    c.C.assign(static_cast<std::size_t>(params.L), 1.0);
    double running = 1.0;  // ∏_{j<ℓ} C_j / 2^{j−1}
    for (int l = 1; l <= params.L; ++l) {
        if (l > 1) c.C[l - 1] = params.d_at(l) / params.d_at(1) * running;
        running *= c.C[l - 1] / std::ldexp(1.0, l - 1);
    }
    c.frak_k = running;
    c.gamma = (1 << params.L) - 1;
    return c;
}

std::vector<double> initial_state(const DeepParams& params, const DeepLayerConstants& c) {
    std::vector<double> th(static_cast<std::size_t>(params.L));
    for (int l = 1; l <= params.L; ++l)
        th[l - 1] = c.power_coefficient(l) * ipow(params.theta1_0, 1LL << (l - 1));
    return th;
}

std::vector<std::string> deep_columns(int L) {
    std::vector<std::string> cols;
    for (int l = 1; l <= L; ++l) cols.push_back("theta_" + std::to_string(l));
    cols.emplace_back("product");
    cols.emplace_back("abs_error");
    return cols;
}

Trajectory integrate_deep_full(const DeepParams& params, double t_end, double dt,
                               std::size_t record_every) {
    if (record_every == 0) throw std::invalid_argument("record_every must be positive");
    const auto c = layer_constants(params);
    const auto sched = StepSchedule::make(t_end, dt);
    Trajectory traj(deep_columns(params.L), make_meta(params, "rk4_full", dt, t_end));
    traj.reserve(sched.count / record_every + 2);

    auto th = initial_state(params, c);
    auto rhs = [&](const std::vector<double>& s) { return full_rhs(s, params); };
    push_layers(traj, 0.0, th, params.lambda);
    for (std::size_t k = 0; k < sched.count; ++k) {
        th = rk4_step(rhs, th, sched.step(k));
        const double t = sched.time(k + 1);
        for (double v : th)
            if (!(std::abs(v) <= kDivergenceThreshold)) throw DivergenceError("deep flow diverged", t);
        if ((k + 1) % record_every == 0 || k + 1 == sched.count) push_layers(traj, t, th, params.lambda);
    }
    return traj;
}

Trajectory integrate_deep_reduced(const DeepParams& params, double t_end, double dt,
                                  std::size_t record_every) {
    if (record_every == 0) throw std::invalid_argument("record_every must be positive");
    const auto c = layer_constants(params);
    const auto sched = StepSchedule::make(t_end, dt);
    Trajectory traj(deep_columns(params.L), make_meta(params, "rk4_reduced", dt, t_end));
    traj.reserve(sched.count / record_every + 2);

    const double d1 = params.d_at(1);
    auto rhs = [&](const std::array<double, 1>& s) {
        return std::array<double, 1>{d1 * (params.lambda - c.frak_k * ipow(s[0], c.gamma))};
    };
    auto layers = [&](double x) {
        std::vector<double> th(static_cast<std::size_t>(params.L));
        for (int l = 1; l <= params.L; ++l) th[l - 1] = c.power_coefficient(l) * ipow(x, 1LL << (l - 1));
        return th;
    };

    std::array<double, 1> s{params.theta1_0};
    push_layers(traj, 0.0, layers(s[0]), params.lambda);
    for (std::size_t k = 0; k < sched.count; ++k) {
        s = rk4_step(rhs, s, sched.step(k));
        const double t = sched.time(k + 1);
        if (!(std::abs(s[0]) <= kDivergenceThreshold)) throw DivergenceError("reduced flow diverged", t);
        if ((k + 1) % record_every == 0 || k + 1 == sched.count) push_layers(traj, t, layers(s[0]), params.lambda);
    }
    return traj;
}

double check_power_relation(const Trajectory& traj, const DeepLayerConstants& c) {
    const int L = static_cast<int>(c.C.size());
    const auto first = traj.column_index("theta_1");
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto row = traj.state(k);
        const double x = row[first];
        for (int l = 2; l <= L; ++l) {
            const double th = row[first + static_cast<std::size_t>(l - 1)];
            const double predicted = c.power_coefficient(l) * ipow(x, 1LL << (l - 1));
            worst = std::max(worst, std::abs(th - predicted) / std::max(1.0, std::abs(th)));
        }
    }
    return worst;
}

}  // namespace fa::deep
