#pragma once

#include <variant>
#include <vector>

/// Real-root solving and case classification for the cubics that govern the
/// feedback-alignment flows.
namespace fa::cubic {

/// x^3 + p x + q.
struct DepressedCubic {
    double p;
    double q;

    double operator()(double x) const { return (x * x + p) * x + q; }
    double derivative(double x) const { return 3.0 * x * x + p; }
};

/// The cubic x^3 + 2dK x - 2dλ whose roots are the equilibria of the
/// two-layer flow.
DepressedCubic fa_cubic(double d, double K, double lambda);

struct Discriminant {
    double value;
    int sign;  // -1, 0, +1
};

inline constexpr double kDefaultZeroTolerance = 1e-12;

/// Δ = -4d²(8dK³ + 27λ²); sign decided with the absolute tolerance
/// zero_tol · d² · max(1, |K|³, λ²).
Discriminant discriminant(double d, double K, double lambda,
                          double zero_tol = kDefaultZeroTolerance);

struct OneReal {
    double r;
};
struct ThreeDistinct {
    double r1, r2, r3;  // r1 < r2 < r3
};
struct SimpleAndDouble {
    double simple;
    double dbl;
};
struct TripleZero {};

using CubicRoots = std::variant<OneReal, ThreeDistinct, SimpleAndDouble, TripleZero>;

/// Roots of x^3 + p x + q given the sign of its discriminant (-4p³ - 27q²).
/// Closed form (Cardano or trigonometric) plus one Newton polish per simple root.
CubicRoots solve_depressed(const DepressedCubic& c, int discriminant_sign);

/// Solves x^3 + 2dK x - 2dλ = 0 with the variant chosen by discriminant().
CubicRoots solve_fa_cubic(double d, double K, double lambda,
                          double zero_tol = kDefaultZeroTolerance);

/// Distinct real roots in ascending order.
std::vector<double> real_roots(const CubicRoots& roots);

/// Unique root > 1 of x^3 - x^2 - 2dλ = 0: the corner (S*, S*) of the
/// Euler invariant region.
double s_star(double d, double lambda);

/// Unique positive root of 2dλ - x^3 + xS = 0, the fixed point the Euler
/// iterate chases for a frozen partial sum S.
double ell_of_s(double S, double d, double lambda);

}  // namespace fa::cubic
