#pragma once

#include "copson/profile.hpp"
#include "copson/step_function.hpp"
#include "copson/weights.hpp"

namespace copson {

// (int_a^b (int_t^b h)^q rho(t) dt)^{1/q} <= C int_a^b h eta.
struct HardyProblem {
    double a = 0.0;
    double b = 1.0;  // may be inf
    WeightExpr rho;
    WeightExpr eta;
    double q = 1.0;
};

// The condition value: for q >= 1 the sup of R(t)^{1/q} / eta(t) with
// R(t) = int_a^t rho; for q < 1 the integral form with q' < 0.
double hardy_condition(const HardyProblem& hp, const GridOptions& grid = {});

// Left-hand side for a nonnegative step function h supported in (a, b).
double hardy_lhs(const HardyProblem& hp, const StepFunction& h, double tol = 1e-10);
// int h eta.
double hardy_mass(const HardyProblem& hp, const StepFunction& h, double tol = 1e-10);

struct HardySaturation {
    StepFunction g;  // int g eta = 1
    double lhs = 0.0;
    double condition = 0.0;
    double ratio = 0.0;  // lhs / condition
};

// Throws ConditionInfinite when the condition value is not finite.
HardySaturation hardy_saturator(const HardyProblem& hp, int knot_count,
                                const GridOptions& grid = {});

}  // namespace copson
