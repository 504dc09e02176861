#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "copson/growth.hpp"

namespace copson {

// coef * t^alpha * exp(rate * t) on [lo, hi).
struct Term {
    double coef = 0.0;
    double alpha = 0.0;
    double rate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

enum class IntegrationMethod { Auto, ForceQuadrature };

class WeightExpr;

struct PowerLawNode {
    double coef;
    double alpha;
};
struct ExponentialNode {
    double coef;
    double rate;
};
struct PiecewiseNode {
    std::vector<double> knots;
    std::vector<double> values;
};
struct SumNode {
    std::vector<WeightExpr> children;
};
struct ProductNode {
    std::vector<WeightExpr> children;  // exactly two
};
struct RestrictNode {
    std::vector<WeightExpr> children;  // exactly one
    double lo;
    double hi;
};

using WeightNode =
    std::variant<PowerLawNode, ExponentialNode, PiecewiseNode, SumNode, ProductNode, RestrictNode>;

// Nonnegative weight on (0, inf). Immutable and cheap to copy.
class WeightExpr {
public:
    WeightExpr();  // the zero weight

    static WeightExpr power_law(double coef, double alpha);
    static WeightExpr exponential(double coef, double rate);
    static WeightExpr piecewise_constant(std::vector<double> knots, std::vector<double> values);
    static WeightExpr sum(std::vector<WeightExpr> children);
    static WeightExpr product(const WeightExpr& a, const WeightExpr& b);
    static WeightExpr restrict(const WeightExpr& child, double lo, double hi);

    // Grammar: pow(c,a) exp(c,l) sum(w,...) prod(w,w) piecewise([k..],[v..])
    // restrict(w,lo,hi). Numbers may be written as fractions (-1/2) or inf.
    static WeightExpr parse(std::string_view text);
    std::string to_string() const;

    double eval(double t) const;

    // int_a^b w. Returns inf when the integral diverges at infinity; throws
    // NonIntegrableNearZero when it diverges at 0.
    double integrate(double a, double b, double tol = 1e-10,
                     IntegrationMethod method = IntegrationMethod::Auto) const;
    // int_{b-d}^b w, accurate when d is small relative to b.
    double integrate_back(double b, double d, double tol = 1e-10) const;

    const WeightNode& node() const { return *node_; }
    const std::vector<Term>& terms() const { return *terms_; }
    // Finite positive points where the weight may jump.
    const std::vector<double>& breakpoints() const { return *breaks_; }
    bool is_zero() const { return terms_->empty(); }
    Growth asymptotic(End end) const;

private:
    explicit WeightExpr(WeightNode node, std::vector<Term> terms);

    std::shared_ptr<const WeightNode> node_;
    std::shared_ptr<const std::vector<Term>> terms_;
    std::shared_ptr<const std::vector<double>> breaks_;
};

inline double eval(const WeightExpr& w, double t) { return w.eval(t); }
inline double integrate(const WeightExpr& w, double a, double b, double tol = 1e-10,
                        IntegrationMethod method = IntegrationMethod::Auto) {
    return w.integrate(a, b, tol, method);
}

// Shortest round-trip decimal for grammar output.
std::string format_number(double x);

}  // namespace copson
