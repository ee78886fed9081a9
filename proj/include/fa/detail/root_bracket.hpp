#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fa::detail {

/// Safeguarded Newton on a sign-changing bracket [lo, hi]. Falls back to
/// bisection whenever the Newton iterate leaves the bracket.
template <class F, class DF>
double bracketed_newton(const F& f, const DF& df, double lo, double hi, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("root bracket does not change sign");
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0) == (flo > 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double slope = df(x);
        double next = (slope != 0.0) ? x - fx / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4e-16 * std::max(1.0, std::abs(x))) return next;
        x = next;
    }
    return x;
}

/// Plain bisection; used by test oracles and where no derivative is handy.
template <class F>
double bisect(const F& f, double lo, double hi, int iterations = 200) {
    double flo = f(lo);
    if ((flo > 0) == (f(hi) > 0)) throw std::invalid_argument("root bracket does not change sign");
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fa::detail
