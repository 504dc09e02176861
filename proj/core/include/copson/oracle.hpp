#pragma once

#include <cstdint>
#include <vector>

#include "copson/profile.hpp"
#include "copson/step_function.hpp"
#include "copson/weights.hpp"

namespace copson {

struct OptimizerBudget {
    int candidates = 256;
    int local_steps = 64;
    std::uint64_t seed = 0;
    int knot_count = 8;
};

// (int w (f*)^q)^{1/q} for a nonincreasing nonnegative step f*.
double lambda_norm(const WeightExpr& w, double q, const StepFunction& f, double tol = 1e-10);
// (int v(t) (int_t^inf u (f*)^m)^{p/m} dt)^{1/p}.
double cl_norm(const WeightExpr& u, const WeightExpr& v, double m, double p, const StepFunction& f,
               double tol = 1e-10);

struct EmpiricalResult {
    double C_emp = 0.0;
    StepFunction best_f;
    int evaluated = 0;
    // Candidates skipped because their CL norm vanished.
    int degenerate = 0;
};

// Largest ratio lambda_norm / cl_norm found over random nonincreasing step
// functions with knots in the window of grid, each refined greedily.
// Deterministic for a given seed.
EmpiricalResult empirical_embedding_constant(const WeightExpr& u, const WeightExpr& v,
                                             const WeightExpr& w, double m, double p, double q,
                                             const OptimizerBudget& budget,
                                             const GridOptions& grid = {});

struct RescaleReport {
    double C_emp = 0.0;       // at (m, p, q)
    double C_rescaled = 0.0;  // at (1, p/m, q/m)
    double predicted = 0.0;   // C_rescaled^{1/m}
    double relative_gap = 0.0;
};

RescaleReport rescale_equivalence_check(const WeightExpr& u, const WeightExpr& v,
                                        const WeightExpr& w, double m, double p, double q,
                                        const OptimizerBudget& budget, const GridOptions& grid = {});

struct DivergenceProbe {
    std::vector<int> half_widths;  // window 2^{-h} .. 2^{h}
    std::vector<double> C_emp;
    bool grows = false;
};

// Reruns the optimizer on growing windows. grows is set when C_emp never
// decreases and the last value exceeds the first by growth_factor.
DivergenceProbe divergence_probe(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                                 double m, double p, double q, const OptimizerBudget& budget,
                                 const std::vector<int>& half_widths, double growth_factor = 10.0,
                                 double tol = 1e-9);

}  // namespace copson
