#include "copson/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "copson/errors.hpp"
#include "copson/extended.hpp"

namespace copson::quad {

namespace {

boost::math::quadrature::tanh_sinh<double>& engine() {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    return integrator;
}

double run(const Integrand& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    if (b - a <= 1e-12 * std::abs(b)) {
        // Too narrow for the double-exponential abscissas to stay inside.
        const GaussRule& g = gauss5();
        double s = 0.0;
        for (int i = 0; i < GaussRule::n; ++i) s += g.w[i] * f(a + (b - a) * g.x[i]);
        return s * (b - a);
    }
    try {
        return engine().integrate(f, a, b, tol);
    } catch (const std::exception& e) {
        // Overflow of a nonnegative integrand means the integral is infinite.
        const double probe = f(0.5 * (a + b));
        if (is_inf(probe)) return kInf;
        throw Error(std::string("quadrature failed: ") + e.what());
    }
}

}  // namespace

double finite(const Integrand& f, double a, double b, double tol) { return run(f, a, b, tol); }

double to_infinity(const Integrand& f, double a, double tol) {
    auto g = [&](double x) {
        const double one_minus = 1.0 - x;
        const double t = a + x / one_minus;
        if (is_inf(t)) return 0.0;
        const double fx = f(t);
        if (fx == 0.0) return 0.0;
        return fx / (one_minus * one_minus);
    };
    return run(g, 0.0, 1.0, tol);
}

double with_right_distance(const Integrand& f, const Integrand& near, double a, double b,
                           double tol) {
    if (!(b > a)) return 0.0;
    const double mid = a + 0.5 * (b - a);
    const double left = run(f, a, mid, tol);
    const double right = run(near, 0.0, b - mid, tol);
    return left + right;
}

double piecewise(const Integrand& f, const std::vector<double>& breaks, double a, double b,
                 double tol) {
    if (!(b > a)) return 0.0;
    double total = 0.0;
    double lo = a;
    for (double x : breaks) {
        if (x <= lo) continue;
        if (x >= b) break;
        total += run(f, lo, x, tol);
        lo = x;
    }
    if (is_inf(b)) {
        total += to_infinity(f, lo, tol);
    } else {
        total += run(f, lo, b, tol);
    }
    return total;
}

const GaussRule& gauss5() {
    static const GaussRule rule = [] {
        using G = boost::math::quadrature::gauss<double, 5>;
        GaussRule r{};
        const auto& ab = G::abscissa();
        const auto& wt = G::weights();
        // Boost stores the nonnegative half: ab = {0, x1, x2}.
        std::vector<std::pair<double, double>> nodes;
        for (std::size_t i = 0; i < ab.size(); ++i) {
            nodes.emplace_back(ab[i], wt[i]);
            if (ab[i] != 0.0) nodes.emplace_back(-ab[i], wt[i]);
        }
        std::sort(nodes.begin(), nodes.end());
        for (int i = 0; i < GaussRule::n; ++i) {
            r.x[i] = 0.5 * (nodes[i].first + 1.0);
            r.w[i] = 0.5 * nodes[i].second;
        }
        return r;
    }();
    return rule;
}

}  // namespace copson::quad
