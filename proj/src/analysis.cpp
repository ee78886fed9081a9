#include "fa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fa::analysis {

namespace {

std::vector<std::size_t> select_window(std::span<const double> xs, std::span<const double> errors,
                                       const WindowPolicy& p, bool log_x) {
    if (xs.size() != errors.size()) throw std::invalid_argument("abscissa and errors differ in length");
    if (!(p.tail_fraction > 0.0 && p.tail_fraction <= 1.0))
        throw std::invalid_argument("tail_fraction must lie in (0, 1]");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = errors[i];
        if (!(e > 0.0) || !std::isfinite(e) || e < p.floor || e > p.ceiling) continue;
        if (p.x_min && xs[i] < *p.x_min) continue;
        if (p.x_max && xs[i] > *p.x_max) continue;
        if (log_x && !(xs[i] > 0.0)) continue;
        keep.push_back(i);
    }
    const auto n_tail = static_cast<std::size_t>(std::ceil(p.tail_fraction * static_cast<double>(keep.size())));
    keep.erase(keep.begin(), keep.end() - static_cast<std::ptrdiff_t>(n_tail));
    if (keep.size() < p.min_points || keep.size() < 2)
        throw std::invalid_argument("too few usable points for a rate fit (" + std::to_string(keep.size()) + ")");
    return keep;
}

RateFit least_squares(FitKind kind, std::span<const double> xs, std::span<const double> errors,
                      const WindowPolicy& policy) {
    const bool log_x = kind == FitKind::PowerLaw;
    const auto idx = select_window(xs, errors, policy, log_x);
    const double n = static_cast<double>(idx.size());
    double mx = 0.0, my = 0.0;
    for (auto i : idx) {
        mx += log_x ? std::log(xs[i]) : xs[i];
        my += std::log(errors[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (auto i : idx) {
        const double dx = (log_x ? std::log(xs[i]) : xs[i]) - mx;
        const double dy = std::log(errors[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("rate fit needs distinct abscissae");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    const double ss_res = std::max(0.0, syy - slope * sxy);
    const double r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;

    double rate = slope;
    if (kind == FitKind::Exponential) rate = -slope;
    if (kind == FitKind::Geometric) rate = std::exp(slope);
    return {kind, rate, slope, intercept, r2, idx.front(), idx.back(), idx.size()};
}

}  // namespace

std::string_view to_string(FitKind k) {
    switch (k) {
        case FitKind::Exponential: return "exponential";
        case FitKind::Geometric: return "geometric";
        case FitKind::PowerLaw: return "power_law";
    }
    return "unknown";
}

RateFit fit_exponential(std::span<const double> times, std::span<const double> errors, const WindowPolicy& p) {
    return least_squares(FitKind::Exponential, times, errors, p);
}

RateFit fit_geometric(std::span<const double> steps, std::span<const double> errors, const WindowPolicy& p) {
    return least_squares(FitKind::Geometric, steps, errors, p);
}

RateFit fit_powerlaw(std::span<const double> times, std::span<const double> errors, const WindowPolicy& p) {
    return least_squares(FitKind::PowerLaw, times, errors, p);
}

}  // namespace fa::analysis
