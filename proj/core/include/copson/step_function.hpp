#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "copson/weights.hpp"

namespace copson {

// Right-continuous step function: values[i] on [knots[i-1], knots[i]) with
// knots[-1] = 0, and 0 on [knots.back(), inf).
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<double> knots, std::vector<double> values);

    // Literal syntax: step([t1,...,tn],[v0,...,v_{n-1}]).
    static StepFunction parse(std::string_view text);
    std::string to_string() const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t pieces() const { return knots_.size(); }
    double left(std::size_t i) const { return i == 0 ? 0.0 : knots_[i - 1]; }
    double right(std::size_t i) const { return knots_[i]; }

    double eval(double t) const;
    bool is_zero() const;
    // Nonnegative and nonincreasing.
    bool is_canonical() const;
    // int_0^t g, int_t^inf g and int_0^inf g.
    double integral_to(double t) const;
    double integral_from(double t) const;
    double integral() const;
    // Right end of the support of the nonzero part.
    double support_end() const;
    StepFunction scaled(double factor) const;
    // The same function as a piecewise-constant weight (values must be >= 0).
    WeightExpr as_weight() const;

private:
    std::vector<double> knots_;
    std::vector<double> values_;
    std::vector<double> cumulative_;  // int_0^{knots[i]} g
};

StepFunction rearrange(const StepFunction& g);
// g**(t) = (1/t) int_0^t g*.
double running_average(const StepFunction& g_star, double t);

}  // namespace copson
