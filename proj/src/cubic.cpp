#include "fa/cubic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fa/detail/root_bracket.hpp"

namespace fa::cubic {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

double newton_polish(const DepressedCubic& c, double x) {
    const double slope = c.derivative(x);
    if (slope == 0.0) return x;
    const double next = x - c(x) / slope;
    // keep the closed-form value if the correction does not reduce the residual
    return std::abs(c(next)) <= std::abs(c(x)) ? next : x;
}

}  // namespace

DepressedCubic fa_cubic(double d, double K, double lambda) {
    return {2.0 * d * K, -2.0 * d * lambda};
}

Discriminant discriminant(double d, double K, double lambda, double zero_tol) {
    require_finite(d, "d");
    require_finite(K, "K");
    require_finite(lambda, "lambda");
    if (!(d > 0.0)) throw std::invalid_argument("FA constant d must be positive");
    const double value = -4.0 * d * d * (8.0 * d * K * K * K + 27.0 * lambda * lambda);
    const double scale = std::max({1.0, std::abs(K * K * K), lambda * lambda});
    const double tol = zero_tol * d * d * scale;
    const int sign = value > tol ? 1 : (value < -tol ? -1 : 0);
    return {value, sign};
}

CubicRoots solve_depressed(const DepressedCubic& c, int discriminant_sign) {
    const double p = c.p;
    const double q = c.q;

    if (discriminant_sign > 0) {
        // three distinct real roots, p < 0
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp((3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        std::array<double, 3> r{};
        for (int k = 0; k < 3; ++k)
            r[k] = newton_polish(c, m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
        std::sort(r.begin(), r.end());
        return ThreeDistinct{r[0], r[1], r[2]};
    }

    if (discriminant_sign == 0) {
        if (p == 0.0) return TripleZero{};
        const double simple = newton_polish(c, 3.0 * q / p);
        const double dbl = -3.0 * q / (2.0 * p);
        return SimpleAndDouble{simple, dbl};
    }

    // one real root: Cardano with the cancellation-free branch for u^3
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    const double root_disc = std::sqrt(std::max(disc, 0.0));
    const double u3 = -q / 2.0 - std::copysign(root_disc, q == 0.0 ? 1.0 : q);
    const double u = std::cbrt(u3);
    const double r = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
    return OneReal{newton_polish(c, r)};
}

CubicRoots solve_fa_cubic(double d, double K, double lambda, double zero_tol) {
    const Discriminant disc = discriminant(d, K, lambda, zero_tol);
    if (K == 0.0 && lambda == 0.0) return TripleZero{};
    return solve_depressed(fa_cubic(d, K, lambda), disc.sign);
}

std::vector<double> real_roots(const CubicRoots& roots) {
    struct Visitor {
        std::vector<double> operator()(const OneReal& v) const { return {v.r}; }
        std::vector<double> operator()(const ThreeDistinct& v) const { return {v.r1, v.r2, v.r3}; }
        std::vector<double> operator()(const SimpleAndDouble& v) const {
            return v.simple < v.dbl ? std::vector<double>{v.simple, v.dbl}
                                    : std::vector<double>{v.dbl, v.simple};
        }
        std::vector<double> operator()(const TripleZero&) const { return {0.0}; }
    };
    return std::visit(Visitor{}, roots);
}

double s_star(double d, double lambda) {
    if (!(d > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("s_star needs d, lambda > 0");
    const double c = 2.0 * d * lambda;
    auto f = [c](double x) { return x * x * (x - 1.0) - c; };
    auto df = [](double x) { return x * (3.0 * x - 2.0); };
    // x^2 (x - 1) >= (x - 1)^3, so x = 1 + cbrt(c) is past the root
    return detail::bracketed_newton(f, df, 1.0, 1.0 + std::cbrt(c) + 1e-12);
}

double ell_of_s(double S, double d, double lambda) {
    if (!(S >= 0.0)) throw std::invalid_argument("ell_of_s needs S >= 0");
    if (!(d > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("ell_of_s needs d, lambda > 0");
    const double c = 2.0 * d * lambda;
    auto f = [c, S](double x) { return x * (x * x - S) - c; };
    auto df = [S](double x) { return 3.0 * x * x - S; };
    const double base = std::cbrt(c);
    const double lo = std::max(base, std::sqrt(S));
    const double hi = std::sqrt(S) + base;
    if (hi - lo <= 0.0) return lo;
    return detail::bracketed_newton(f, df, lo, hi * (1.0 + 1e-15) + 1e-300);
}

}  // namespace fa::cubic
