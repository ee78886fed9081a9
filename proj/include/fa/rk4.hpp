#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace fa {

/// One classic fourth-order Runge-Kutta step for an autonomous system.
/// `State` is any fixed- or variable-size container of doubles indexable with
/// operator[] and copy-constructible (std::array, std::vector).
template <class State, class Rhs>
State rk4_step(const Rhs& rhs, const State& y, double h) {
    const std::size_t n = y.size();
    State k1 = rhs(y);
    State w = y;
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] + 0.5 * h * k1[i];
    State k2 = rhs(w);
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] + 0.5 * h * k2[i];
    State k3 = rhs(w);
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] + h * k3[i];
    State k4 = rhs(w);
    State out = y;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

/// Fixed-step schedule over [0, t_end]: `count` steps of `dt`, the last one
/// shortened so the grid ends exactly on t_end.
struct StepSchedule {
    double t_end;
    double dt;
    std::size_t count;

    static StepSchedule make(double t_end, double dt) {
        if (!(dt > 0.0) || !(t_end > 0.0) || !std::isfinite(t_end))
            throw std::invalid_argument("step schedule needs 0 < dt and finite t_end > 0");
        if (dt > t_end) throw std::invalid_argument("dt must not exceed t_end");
        // the relative slack keeps t_end/dt = 10000.000000001 from adding a sliver step
        const double n = std::ceil(t_end / dt * (1.0 - 1e-12));
        return {t_end, dt, static_cast<std::size_t>(std::max(1.0, n))};
    }
    double time(std::size_t k) const { return k == count ? t_end : static_cast<double>(k) * dt; }
    double step(std::size_t k) const { return time(k + 1) - time(k); }
};

}  // namespace fa
