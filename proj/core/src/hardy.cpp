#include "copson/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/quadrature.hpp"

namespace copson {

namespace {

void validate(const HardyProblem& hp) {
    if (!(hp.a >= 0.0) || !(hp.b > hp.a) || is_inf(hp.a)) throw InvalidArgument("need 0 <= a < b");
    if (!(hp.q > 0.0)) throw InvalidArgument("q must be positive");
}

double R(const HardyProblem& hp, double t, double tol) {
    try {
        return hp.rho.integrate(hp.a, t, tol);
    } catch (const NonIntegrableNearZero&) {
        return kInf;
    }
}

// eta on (a, b): at b itself the left limit is used.
double eta_at(const HardyProblem& hp, double t) {
    if (t >= hp.b) t = std::nextafter(hp.b, hp.a);
    return hp.eta.eval(t);
}

// Offsets s = t - a on a log grid, ascending; they end at b - a when b is finite.
std::vector<double> offsets(const HardyProblem& hp, const GridOptions& grid) {
    const int count = (grid.hi_exp - grid.lo_exp) * grid.points_per_octave;
    std::vector<double> s;
    s.reserve(static_cast<std::size_t>(count) + 1);
    for (int k = count; k >= 0; --k) {
        const double e = -static_cast<double>(k) / grid.points_per_octave;
        s.push_back(is_inf(hp.b) ? std::exp2(grid.hi_exp + e) : (hp.b - hp.a) * std::exp2(e));
    }
    return s;
}

struct Point {
    double t;
    double weight;  // dt weight; 0 for grid points
};

// Grid points and five Gauss nodes per segment in log s, ascending in t.
std::vector<Point> fine_points(const HardyProblem& hp, const std::vector<double>& s) {
    const quad::GaussRule& g = quad::gauss5();
    std::vector<Point> pts;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        pts.push_back({hp.a + s[i], 0.0});
        const double L = std::log(s[i + 1] / s[i]);
        for (int k = 0; k < quad::GaussRule::n; ++k) {
            const double y = s[i] * std::exp(L * g.x[k]);
            pts.push_back({hp.a + y, g.w[k] * y * L});
        }
    }
    pts.push_back({hp.a + s.back(), 0.0});
    return pts;
}

double ratio_q_ge_1(const HardyProblem& hp, double t, double tol) {
    return ext_div(ext_pow(R(hp, t, tol), 1.0 / hp.q), eta_at(hp, t));
}

std::size_t argmax_q_ge_1(const HardyProblem& hp, const std::vector<double>& s, double tol,
                          double& best) {
    std::size_t arg = 0;
    best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = ratio_q_ge_1(hp, hp.a + s[i], tol);
        if (r > best) {
            best = r;
            arg = i;
        }
    }
    return arg;
}

// c chi_[t - eps, t) normalized so that int g eta = 1; empty when eta has no
// mass there.
std::optional<StepFunction> bump(const HardyProblem& hp, double t, double eps, double tol) {
    const double lo = std::max(t - eps, hp.a);
    const double mass = hp.eta.integrate(lo, t, tol);
    if (!(mass > 0.0) || is_inf(mass)) return std::nullopt;
    const double c = 1.0 / mass;
    if (lo > 0.0) return StepFunction({lo, t}, {0.0, c});
    return StepFunction({t}, {c});
}

}  // namespace

double hardy_condition(const HardyProblem& hp, const GridOptions& grid) {
    validate(hp);
    const std::vector<double> s = offsets(hp, grid);
    if (hp.q >= 1.0) {
        // The grid cannot see a ratio that blows up at an open end.
        auto diverges = [&](End end, const Growth& R) {
            const Growth eta = hp.eta.asymptotic(end);
            if (!R.known() || !eta.known()) return false;
            if (eta.is_zero()) return !R.is_zero();
            return trend(mul(pow(R, 1.0 / hp.q), pow(eta, -1.0)), end) == Trend::Diverges;
        };
        if (hp.a == 0.0 && diverges(End::Zero, primitive_near_zero(hp.rho.asymptotic(End::Zero)))) return kInf;
        if (is_inf(hp.b) && diverges(End::Infinity, primitive_near_infinity(hp.rho.asymptotic(End::Infinity)))) {
            return kInf;
        }
        double best = 0.0;
        argmax_q_ge_1(hp, s, grid.tol, best);
        return best;
    }
    const double qp = hp.q / (hp.q - 1.0);
    const double e = -qp;
    const std::vector<Point> pts = fine_points(hp, s);
    // E(t) = sup_{x > t} eta^{q'}(x), swept from the right.
    std::vector<double> E(pts.size());
    double running = 0.0;
    for (std::size_t i = pts.size(); i-- > 0;) {
        running = std::max(running, ext_pow(eta_at(hp, pts[i].t), qp));
        E[i] = running;
    }
    auto integrand = [&](std::size_t i) {
        const double rho = hp.rho.eval(pts[i].t);
        if (rho == 0.0) return 0.0;
        return ext_mul(ext_mul(ext_pow(R(hp, pts[i].t, grid.tol), e), rho), E[i]);
    };
    double sum = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].weight > 0.0) sum += pts[i].weight * integrand(i);
    }
    // Edge corrections from the log slope of the integrand in s.
    bool numeric = false;
    const Growth unknown = Growth::unknown();
    sum += head_below(integrand(0), integrand(6), s[0], s[1], unknown, numeric);
    if (is_inf(hp.b)) {
        const std::size_t n = pts.size();
        sum += tail_beyond(integrand(n - 1), integrand(n - 7), s[s.size() - 1], s[s.size() - 2],
                           unknown, numeric);
    }
    return ext_pow(sum, -1.0 / qp);
}

double hardy_lhs(const HardyProblem& hp, const StepFunction& h, double tol) {
    validate(hp);
    if (h.is_zero()) return 0.0;
    for (double x : h.values()) {
        if (x < 0.0) throw InvalidArgument("h must be nonnegative");
    }
    const double beyond = is_inf(hp.b) ? 0.0 : h.integral_from(hp.b);
    const double end = std::min(hp.b, h.support_end());
    if (!(end > hp.a)) return 0.0;
    std::vector<double> cuts = h.knots();
    cuts.insert(cuts.end(), hp.rho.breakpoints().begin(), hp.rho.breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    auto f = [&](double t) {
        const double r = hp.rho.eval(t);
        if (r == 0.0) return 0.0;
        return ext_mul(r, ext_pow(std::max(0.0, h.integral_from(t) - beyond), hp.q));
    };
    return ext_pow(quad::piecewise(f, cuts, hp.a, end, tol), 1.0 / hp.q);
}

double hardy_mass(const HardyProblem& hp, const StepFunction& h, double tol) {
    double total = 0.0;
    for (std::size_t i = 0; i < h.pieces(); ++i) {
        const double c = h.values()[i];
        const double lo = std::max(h.left(i), hp.a);
        const double hi = std::min(h.right(i), hp.b);
        if (c == 0.0 || !(hi > lo)) continue;
        total += ext_mul(c, hp.eta.integrate(lo, hi, tol));
    }
    return total;
}

HardySaturation hardy_saturator(const HardyProblem& hp, int knot_count, const GridOptions& grid) {
    validate(hp);
    if (knot_count < 1) throw InvalidArgument("knot_count must be positive");
    HardySaturation out;
    out.condition = hardy_condition(hp, grid);
    if (!std::isfinite(out.condition)) throw ConditionInfinite("Hardy condition is infinite");
    const std::vector<double> s = offsets(hp, grid);
    const double tol = grid.tol;
    std::vector<StepFunction> family;

    if (hp.q >= 1.0) {
        double best = 0.0;
        const std::size_t i = argmax_q_ge_1(hp, s, tol, best);
        const double t = hp.a + s[i];
        if (auto g = bump(hp, t, s[i] / knot_count, tol)) family.push_back(*g);
    } else {
        // Bumps spread over the grid.
        const std::size_t stride = std::max<std::size_t>(1, s.size() / static_cast<std::size_t>(knot_count));
        for (std::size_t i = 0; i < s.size(); i += stride) {
            if (auto g = bump(hp, hp.a + s[i], s[i] / knot_count, tol)) family.push_back(*g);
        }
        // R^{q/(1-q)} rho inf_{(t,b)} eta^{-1/(1-q)} on knot_count log-spaced pieces.
        const double lo = s.front();
        const double hi = s.back();
        std::vector<double> knots;
        std::vector<double> values;
        for (int k = 1; k <= knot_count; ++k) {
            const double left = lo * std::pow(hi / lo, static_cast<double>(k - 1) / knot_count);
            const double right = lo * std::pow(hi / lo, static_cast<double>(k) / knot_count);
            const double mid = hp.a + std::sqrt(left * right);
            double inf_eta = kInf;
            for (int j = 0; j <= 8; ++j) {
                const double x = mid + (hp.a + right - mid) * j / 8.0;
                inf_eta = std::min(inf_eta, eta_at(hp, x));
            }
            const double val = ext_mul(ext_mul(ext_pow(R(hp, mid, tol), hp.q / (1.0 - hp.q)), hp.rho.eval(mid)),
                                       ext_pow(inf_eta, -1.0 / (1.0 - hp.q)));
            if (k == 1 && hp.a > 0.0) {
                knots.push_back(hp.a + left);
                values.push_back(0.0);
            }
            knots.push_back(hp.a + right);
            values.push_back(std::isfinite(val) ? val : 0.0);
        }
        for (std::size_t cut = 0; cut < values.size(); cut += std::max<std::size_t>(1, values.size() / 8)) {
            std::vector<double> v = values;
            std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cut), 0.0);
            const StepFunction h(knots, v);
            const double mass = hardy_mass(hp, h, tol);
            if (mass > 0.0 && std::isfinite(mass)) family.push_back(h.scaled(1.0 / mass));
        }
    }
    if (family.empty()) throw ConditionInfinite("no test function with positive eta-mass");
    bool first = true;
    for (const StepFunction& g : family) {
        const double lhs = hardy_lhs(hp, g, tol);
        if (first || lhs > out.lhs) {
            first = false;
            out.lhs = lhs;
            out.g = g;
        }
    }
    out.ratio = ext_div(out.lhs, out.condition);
    return out;
}

}  // namespace copson
