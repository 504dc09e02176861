#pragma once

#include <array>
#include <functional>
#include <vector>

namespace copson::quad {

using Integrand = std::function<double(double)>;

// Double-exponential quadrature on a finite interval. Integrable endpoint
// singularities are fine; the integrand is never evaluated at a or b.
double finite(const Integrand& f, double a, double b, double tol);

// Integral over [a, inf) through t = a + x/(1-x).
double to_infinity(const Integrand& f, double a, double tol);

// Integral over [a, b] when the integrand loses precision near b if written in
// the absolute variable. The left half is integrated in s, the right half in
// the distance d = b - s: near(d) must return the integrand at s = b - d.
double with_right_distance(const Integrand& f, const Integrand& near, double a, double b,
                           double tol);

// Splits [a, b] at the given breakpoints (sorted, outside points ignored) and
// sums the pieces. b may be infinite.
double piecewise(const Integrand& f, const std::vector<double>& breaks, double a, double b,
                 double tol);

// Five-point Gauss-Legendre rule on [0, 1].
struct GaussRule {
    static constexpr int n = 5;
    std::array<double, n> x;
    std::array<double, n> w;
};
const GaussRule& gauss5();

}  // namespace copson::quad
