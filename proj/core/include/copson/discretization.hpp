#pragma once

#include <vector>

#include "copson/fundamental.hpp"
#include "copson/step_function.hpp"

namespace copson {

enum class KKind { Zero, Infinite };
enum class Label { InK1, InK2 };

// Truncated window k = kmin..kmax of a discretizing sequence. When K is Zero
// the window ends at k = 0 with t_0 = inf.
struct DiscretizingSequence {
    KKind K = KKind::Infinite;
    int kmin = 0;
    int kmax = 0;
    std::vector<double> t;
    // labels[k - kmin]: which identity links t_{k-1} and t_k.
    std::vector<Label> labels;
    bool t0_is_infinity = false;
    double ratio = 4.0;  // 2^{p/m+1}

    bool contains(int k) const { return k >= kmin && k <= kmax; }
    double at(int k) const;
    Label label(int k) const;
};

DiscretizingSequence build_sequence(const FundamentalFunction& F, int depth);

struct SequenceResiduals {
    double v_growth = 0.0;  // relative violation of V(t_k) >= R V(t_{k-1})
    double phi_growth = 0.0;  // relative violation of phi^p(t_k) >= R phi^p(t_{k-1})
    double v_equality = 0.0;  // relative defect of V(t_k) = R V(t_{k-1}) over InK1 indices
    double phi_equality = 0.0;  // relative defect of phi^p(t_k) = R phi^p(t_{k-1}) over InK2 indices
    double max() const;
};

SequenceResiduals verify_sequence(const DiscretizingSequence& seq, const FundamentalFunction& F);

struct CoveringEstimate {
    double v_lhs = 0.0;
    double v_rhs = 0.0;
    double phi_lhs = 0.0;
    double phi_rhs = 0.0;
};

// Both sides of the covering estimates for k and t in [t_{k-1}, t_k];
// needs k-3 inside the window.
CoveringEstimate covering_estimates(const DiscretizingSequence& seq, const FundamentalFunction& F,
                                    int k, double t);

// int_0^inf v(t) (int_t^inf u(s) (int_s^inf h)^m ds)^{p/m} dt for h >= 0.
double continuous_functional(const WeightExpr& u, const WeightExpr& v, double m, double p,
                             const StepFunction& h, double tol = 1e-10);

// Blocks: (int phi^m (int_y^{t_k} h)^{m-1} h)^{p/m} per block. Derivative: the
// phi^{m-1} phi' form plus phi^p(t_{k-1}) (int h)^p per block.
enum class DiscreteForm { Blocks, Derivative };

// Sum over the stored blocks [t_{k-1}, t_k]. Blocks below t_kmin are dropped.
double discretized_functional(const DiscretizingSequence& seq, const FundamentalFunction& F,
                              const StepFunction& h, DiscreteForm form);

}  // namespace copson
