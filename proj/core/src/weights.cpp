#include "copson/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/quadrature.hpp"

namespace copson {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidArgument(message);
}

std::vector<Term> merge_terms(std::vector<Term> terms) {
    std::map<std::tuple<double, double, double, double>, double> merged;
    for (const Term& t : terms) {
        if (t.coef == 0.0 || !(t.hi > t.lo)) continue;
        merged[{t.alpha, t.rate, t.lo, t.hi}] += t.coef;
    }
    std::vector<Term> out;
    out.reserve(merged.size());
    for (const auto& [key, coef] : merged) {
        const auto& [alpha, rate, lo, hi] = key;
        out.push_back({coef, alpha, rate, lo, hi});
    }
    return out;
}

std::vector<double> collect_breaks(const std::vector<Term>& terms) {
    std::vector<double> b;
    for (const Term& t : terms) {
        if (t.lo > 0.0) b.push_back(t.lo);
        if (std::isfinite(t.hi)) b.push_back(t.hi);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double term_value(const Term& t, double x) {
    if (x < t.lo || x >= t.hi) return 0.0;
    double v = t.coef;
    if (t.alpha != 0.0) v *= std::pow(x, t.alpha);
    if (t.rate != 0.0) v *= std::exp(t.rate * x);
    return v;
}

bool is_nonneg_integer(double a) { return a >= 0.0 && a <= 64.0 && a == std::floor(a); }

// c/k * (b^k - a^k) written through expm1 of the log ratio, so nearby a, b
// do not cancel. log_ratio = log(a/b).
double power_difference(double c, double k, double b, double log_ratio) {
    return c / k * std::pow(b, k) * -std::expm1(k * log_ratio);
}

double quadrature_term(const Term& t, double a, double b, double tol) {
    auto f = [&t](double x) { return term_value(t, x); };
    if (is_inf(b)) return quad::to_infinity(f, a, tol);
    return quad::finite(f, a, b, tol);
}

double integrate_term(const Term& t, double a, double b, double tol, IntegrationMethod method) {
    const double lo = std::max(a, t.lo);
    const double hi = std::min(b, t.hi);
    if (!(hi > lo)) return 0.0;
    if (lo == 0.0 && t.alpha <= -1.0) {
        throw NonIntegrableNearZero("weight term t^" + format_number(t.alpha) +
                                    " is not integrable near 0");
    }
    if (is_inf(hi)) {
        if (t.rate > 0.0) return kInf;
        if (t.rate == 0.0 && t.alpha >= -1.0) return kInf;
    }
    if (method == IntegrationMethod::ForceQuadrature) return quadrature_term(t, lo, hi, tol);

    if (t.rate == 0.0) {
        const double k = t.alpha + 1.0;
        if (k == 0.0) return t.coef * -std::log(lo / hi);
        if (is_inf(hi)) return t.coef * std::pow(lo, k) / -k;
        if (lo == 0.0) return t.coef * std::pow(hi, k) / k;
        return power_difference(t.coef, k, hi, std::log(lo / hi));
    }
    const double l = t.rate;
    if (t.alpha == 0.0) {
        if (is_inf(hi)) return -t.coef * std::exp(l * lo) / l;
        // Anchor at the larger end so that neither factor overflows.
        if (l < 0.0) return t.coef * std::exp(l * lo) * std::expm1(l * (hi - lo)) / l;
        return t.coef * std::exp(l * hi) * -std::expm1(l * (lo - hi)) / l;
    }
    if (is_nonneg_integer(t.alpha)) {
        const int n = static_cast<int>(t.alpha);
        auto antiderivative = [&](double x) {
            if (is_inf(x)) return 0.0;
            double sum = 0.0;
            double falling = 1.0;  // n!/(n-j)!
            double lpow = l;
            for (int j = 0; j <= n; ++j) {
                const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
                sum += sgn * falling * std::pow(x, n - j) / lpow;
                falling *= (n - j);
                lpow *= l;
            }
            return std::exp(l * x) * sum;
        };
        const double fb = antiderivative(hi);
        const double fa = antiderivative(lo);
        const double diff = fb - fa;
        if (std::abs(diff) > 1e-8 * std::max(std::abs(fa), std::abs(fb))) return t.coef * diff;
    }
    return quadrature_term(t, lo, hi, tol);
}

double integrate_term_back(const Term& t, double b, double d, double tol) {
    const double start = b - d;
    if (t.hi < b || start < t.lo) return integrate_term(t, start, b, tol, IntegrationMethod::Auto);
    // [b - d, b] lies inside the term's interval.
    if (t.rate == 0.0) {
        const double k = t.alpha + 1.0;
        const double log_ratio = std::log1p(-d / b);
        if (k == 0.0) return t.coef * -log_ratio;
        return power_difference(t.coef, k, b, log_ratio);
    }
    if (t.alpha == 0.0) {
        const double l = t.rate;
        if (l < 0.0) return t.coef * std::exp(l * start) * std::expm1(l * d) / l;
        return t.coef * std::exp(l * b) * -std::expm1(-l * d) / l;
    }
    auto f = [&](double x) { return term_value(t, b - x); };
    return quad::finite(f, 0.0, d, tol);
}

}  // namespace

std::string format_number(double x) {
    if (is_inf(x)) return "inf";
    if (std::isinf(x)) return "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

WeightExpr::WeightExpr() : WeightExpr(PowerLawNode{0.0, 0.0}, {}) {}

WeightExpr::WeightExpr(WeightNode node, std::vector<Term> terms)
    : node_(std::make_shared<const WeightNode>(std::move(node))),
      terms_(std::make_shared<const std::vector<Term>>(merge_terms(std::move(terms)))),
      breaks_(std::make_shared<const std::vector<double>>(collect_breaks(*terms_))) {}

WeightExpr WeightExpr::power_law(double coef, double alpha) {
    require(coef >= 0.0 && std::isfinite(coef), "power law coefficient must be finite and >= 0");
    require(std::isfinite(alpha), "power law exponent must be finite");
    std::vector<Term> terms;
    if (coef > 0.0) terms.push_back({coef, alpha, 0.0, 0.0, kInf});
    return WeightExpr(PowerLawNode{coef, alpha}, std::move(terms));
}

WeightExpr WeightExpr::exponential(double coef, double rate) {
    require(coef >= 0.0 && std::isfinite(coef), "exponential coefficient must be finite and >= 0");
    require(std::isfinite(rate), "exponential rate must be finite");
    std::vector<Term> terms;
    if (coef > 0.0) terms.push_back({coef, 0.0, rate, 0.0, kInf});
    return WeightExpr(ExponentialNode{coef, rate}, std::move(terms));
}

WeightExpr WeightExpr::piecewise_constant(std::vector<double> knots, std::vector<double> values) {
    require(values.size() == knots.size() + 1,
            "piecewise needs one more value than knots (last piece extends to inf)");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        require(knots[i] > 0.0 && std::isfinite(knots[i]), "piecewise knots must be positive");
        require(i == 0 || knots[i] > knots[i - 1], "piecewise knots must be strictly increasing");
    }
    std::vector<Term> terms;
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(values[i] >= 0.0 && std::isfinite(values[i]), "piecewise values must be >= 0");
        const double lo = i == 0 ? 0.0 : knots[i - 1];
        const double hi = i == knots.size() ? kInf : knots[i];
        if (values[i] > 0.0) terms.push_back({values[i], 0.0, 0.0, lo, hi});
    }
    return WeightExpr(PiecewiseNode{std::move(knots), std::move(values)}, std::move(terms));
}

WeightExpr WeightExpr::sum(std::vector<WeightExpr> children) {
    require(!children.empty(), "sum needs at least one child");
    std::vector<Term> terms;
    for (const auto& c : children) terms.insert(terms.end(), c.terms().begin(), c.terms().end());
    return WeightExpr(SumNode{std::move(children)}, std::move(terms));
}

WeightExpr WeightExpr::product(const WeightExpr& a, const WeightExpr& b) {
    std::vector<Term> terms;
    for (const Term& x : a.terms()) {
        for (const Term& y : b.terms()) {
            const double lo = std::max(x.lo, y.lo);
            const double hi = std::min(x.hi, y.hi);
            if (hi > lo) terms.push_back({x.coef * y.coef, x.alpha + y.alpha, x.rate + y.rate, lo, hi});
        }
    }
    return WeightExpr(ProductNode{{a, b}}, std::move(terms));
}

WeightExpr WeightExpr::restrict(const WeightExpr& child, double lo, double hi) {
    require(lo >= 0.0 && hi > lo, "restrict needs 0 <= lo < hi");
    std::vector<Term> terms;
    for (Term t : child.terms()) {
        t.lo = std::max(t.lo, lo);
        t.hi = std::min(t.hi, hi);
        if (t.hi > t.lo) terms.push_back(t);
    }
    return WeightExpr(RestrictNode{{child}, lo, hi}, std::move(terms));
}

double WeightExpr::eval(double t) const {
    struct Visitor {
        double t;
        double operator()(const PowerLawNode& n) const {
            return n.coef == 0.0 ? 0.0 : n.coef * std::pow(t, n.alpha);
        }
        double operator()(const ExponentialNode& n) const {
            return n.coef == 0.0 ? 0.0 : n.coef * std::exp(n.rate * t);
        }
        double operator()(const PiecewiseNode& n) const {
            auto it = std::upper_bound(n.knots.begin(), n.knots.end(), t);
            return n.values[static_cast<std::size_t>(it - n.knots.begin())];
        }
        double operator()(const SumNode& n) const {
            double s = 0.0;
            for (const auto& c : n.children) s += c.eval(t);
            return s;
        }
        double operator()(const ProductNode& n) const {
            return ext_mul(n.children[0].eval(t), n.children[1].eval(t));
        }
        double operator()(const RestrictNode& n) const {
            return (t >= n.lo && t < n.hi) ? n.children[0].eval(t) : 0.0;
        }
    };
    return std::visit(Visitor{t}, *node_);
}

double WeightExpr::integrate(double a, double b, double tol, IntegrationMethod method) const {
    require(a >= 0.0 && b >= a, "integrate needs 0 <= a <= b");
    double total = 0.0;
    for (const Term& t : terms()) {
        total += integrate_term(t, a, b, tol, method);
        if (is_inf(total)) {
            // Keep scanning so a divergence at 0 still raises.
            for (const Term& rest : terms()) {
                if (a == 0.0 && rest.lo == 0.0 && rest.alpha <= -1.0) {
                    integrate_term(rest, a, b, tol, method);
                }
            }
            return kInf;
        }
    }
    return total;
}

double WeightExpr::integrate_back(double b, double d, double tol) const {
    require(b > 0.0 && std::isfinite(b) && d >= 0.0 && d <= b, "integrate_back needs 0 <= d <= b");
    if (d == b) return integrate(0.0, b, tol);
    double total = 0.0;
    for (const Term& t : terms()) total += integrate_term_back(t, b, d, tol);
    return total;
}

Growth WeightExpr::asymptotic(End end) const {
    Growth g = Growth::zero();
    for (const Term& t : terms()) {
        if (end == End::Zero && t.lo == 0.0) {
            g = add(g, Growth::regular(t.alpha), End::Zero);
        } else if (end == End::Infinity && is_inf(t.hi)) {
            g = add(g, Growth::regular(t.alpha, 0.0, t.rate), End::Infinity);
        }
    }
    return g;
}

std::string WeightExpr::to_string() const {
    struct Visitor {
        std::string operator()(const PowerLawNode& n) const {
            return "pow(" + format_number(n.coef) + "," + format_number(n.alpha) + ")";
        }
        std::string operator()(const ExponentialNode& n) const {
            return "exp(" + format_number(n.coef) + "," + format_number(n.rate) + ")";
        }
        std::string operator()(const PiecewiseNode& n) const {
            auto list = [](const std::vector<double>& xs) {
                std::string s = "[";
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    if (i) s += ",";
                    s += format_number(xs[i]);
                }
                return s + "]";
            };
            return "piecewise(" + list(n.knots) + "," + list(n.values) + ")";
        }
        std::string operator()(const SumNode& n) const {
            std::string s = "sum(";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) s += ",";
                s += n.children[i].to_string();
            }
            return s + ")";
        }
        std::string operator()(const ProductNode& n) const {
            return "prod(" + n.children[0].to_string() + "," + n.children[1].to_string() + ")";
        }
        std::string operator()(const RestrictNode& n) const {
            return "restrict(" + n.children[0].to_string() + "," + format_number(n.lo) + "," +
                   format_number(n.hi) + ")";
        }
    };
    return std::visit(Visitor{}, *node_);
}

}  // namespace copson
