#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>

/// Least-squares decay-rate fits on error sequences.
namespace fa::analysis {

enum class FitKind { Exponential, Geometric, PowerLaw };

std::string_view to_string(FitKind k);

struct RateFit {
    FitKind kind;
    /// Exponential: decay constant (−slope). Geometric: ratio q = e^slope.
    /// PowerLaw: exponent (slope on log-log axes).
    double rate;
    double slope;
    double intercept;
    double r_squared;
    std::size_t first;   // window [first, last] in sample indices
    std::size_t last;
    std::size_t points;  // samples actually fitted
};

/// Which samples enter a fit: errors inside [floor, ceiling], abscissa inside
/// [x_min, x_max], then the last `tail_fraction` of what qualifies.
struct WindowPolicy {
    double floor = 1e-10;
    double ceiling = 1e-2;
    double tail_fraction = 0.5;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::size_t min_points = 10;

    /// Whole sequence (only positivity and the abscissa range filter).
    static WindowPolicy everything() {
        return {std::numeric_limits<double>::min(), std::numeric_limits<double>::infinity(), 1.0,
                std::nullopt, std::nullopt, 10};
    }
};

/// Slope of ln(error) against t. Throws std::invalid_argument with fewer than
/// `min_points` usable samples.
RateFit fit_exponential(std::span<const double> times, std::span<const double> errors,
                        const WindowPolicy& policy = {});

/// Slope of ln(error) against the step index, reported as q = e^slope.
RateFit fit_geometric(std::span<const double> steps, std::span<const double> errors,
                      const WindowPolicy& policy = {});

/// Slope of ln(error) against ln(t).
RateFit fit_powerlaw(std::span<const double> times, std::span<const double> errors,
                     const WindowPolicy& policy = {});

}  // namespace fa::analysis
