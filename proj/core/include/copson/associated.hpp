#pragma once

#include <map>
#include <string>

#include "copson/profile.hpp"
#include "copson/step_function.hpp"
#include "copson/weights.hpp"

namespace copson {

// (i) m<=1, p<=1; (ii) m<=1<p; (iii) p<=1<m; (iv) m>1, p>1.
enum class Quadrant { i, ii, iii, iv };

Quadrant quadrant(double m, double p);
std::string to_string(Quadrant q);

struct AssociatedReport {
    Quadrant quadrant = Quadrant::i;
    double norm = 0.0;
    std::map<std::string, double> terms;
    bool numeric_endpoints = false;
};

AssociatedReport associated_report(const WeightExpr& u, const WeightExpr& v, double m, double p,
                                   const StepFunction& g, const GridOptions& grid = {});
double associated_norm(const WeightExpr& u, const WeightExpr& v, double m, double p,
                       const StepFunction& g, const GridOptions& grid = {});

}  // namespace copson
