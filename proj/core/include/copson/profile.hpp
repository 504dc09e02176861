#pragma once

#include <functional>
#include <vector>

#include "copson/extended.hpp"
#include "copson/fundamental.hpp"
#include "copson/growth.hpp"
#include "copson/step_function.hpp"
#include "copson/weights.hpp"

namespace copson {

// Log grid 2^lo_exp .. 2^hi_exp used for suprema and outer integrals.
struct GridOptions {
    int lo_exp = -40;
    int hi_exp = 40;
    int points_per_octave = 16;
    double tol = 1e-10;
};

// W(t) = int_0^t w, either for a weight or for a rearranged step function.
class Primitive {
public:
    Primitive();  // identically zero
    static Primitive of_weight(const WeightExpr& w, double tol = 1e-10);
    static Primitive of_step(const StepFunction& g_star);

    double operator()(double t) const;  // t may be inf
    double total() const { return (*this)(kInf); }
    Growth growth(End end) const { return end == End::Zero ? zero_ : infinity_; }
    const std::vector<double>& breakpoints() const { return breaks_; }
    bool is_zero() const { return identically_zero_; }

private:
    std::function<double(double)> fn_;
    Growth zero_;
    Growth infinity_;
    std::vector<double> breaks_;
    bool identically_zero_ = true;
};

// Everything the integral conditions need at one point.
struct Sample {
    double t = 0.0;
    double V = 0.0;
    double W = 0.0;
    double Phi = 0.0;  // phi^p
    double Psi = 0.0;  // int_0^t v U^{p/m-1}; only where u(t) > 0
    double u = 0.0;
    double v = 0.0;
};

// Samples of V, W, phi^p and psi on the grid points and on five Gauss nodes
// per grid segment (nodes are placed in the log variable).
class Profile {
public:
    Profile(FundamentalFunction F, Primitive W, const GridOptions& grid, bool need_psi);

    const FundamentalFunction& F() const { return F_; }
    const Primitive& W() const { return W_; }
    const GridOptions& options() const { return grid_; }
    bool has_psi() const { return need_psi_; }

    const std::vector<double>& x() const { return x_; }
    std::size_t size() const { return x_.size(); }
    const std::vector<Sample>& grid() const { return at_grid_; }
    const std::vector<Sample>& nodes() const { return at_node_; }
    // dt weight of each node.
    const std::vector<double>& node_weights() const { return node_w_; }
    // U(x_i, x_{i+1}).
    const std::vector<double>& segment_U() const { return seg_U_; }
    // U(x_i, node) for the nodes of segment i.
    const std::vector<double>& node_U() const { return node_U_; }

    Sample sample(double t) const;
    // Index i with x_i <= t < x_{i+1}, clamped to the grid.
    std::size_t segment_of(double t) const;

    double phi_p_infinity() const { return phi_inf_; }
    double W_infinity() const { return W_inf_; }

    Growth V_growth(End end) const;
    Growth W_growth(End end) const { return W_.growth(end); }
    Growth phi_growth(End end) const { return F_.phi_p_growth(end); }
    Growth psi_growth(End end) const { return F_.psi_growth(end); }
    Growth u_growth(End end) const { return F_.u().asymptotic(end); }
    Growth v_growth(End end) const { return F_.v().asymptotic(end); }
    // Class of U(0,t) near 0 and of U(1,t) near inf.
    Growth U_growth(End end) const;
    // Class of U(t, 2t).
    Growth U_local(End end) const;

private:
    FundamentalFunction F_;
    Primitive W_;
    GridOptions grid_;
    bool need_psi_;
    std::vector<double> x_;
    std::vector<Sample> at_grid_;
    std::vector<Sample> at_node_;
    std::vector<double> node_w_;
    std::vector<double> seg_U_;
    std::vector<double> node_U_;
    double phi_inf_ = 0.0;
    double W_inf_ = 0.0;
};

// A function of the profile sampled on grid points and nodes, with its
// endpoint classes.
struct Field {
    std::function<double(const Sample&)> fn;
    std::vector<double> grid;
    std::vector<double> nodes;
    Growth zero;
    Growth infinity;
};

Field make_field(const Profile& P, std::function<double(const Sample&)> fn, Growth at_zero,
                 Growth at_infinity);

// Result of a grid evaluation; numeric is set when an endpoint class was not
// known symbolically and the window edge was used instead.
struct Evaluated {
    double value = 0.0;
    bool numeric = false;
};

// T(t) = int_t^inf f(y) U(t,y)^c dy at every grid point, with its classes.
struct TailIntegral {
    std::vector<double> grid;
    Growth zero;
    Growth infinity;
    bool numeric = false;
};

TailIntegral tail_integral(const Profile& P, const Field& f, double c);
// The same integral at an arbitrary t inside the window.
double tail_integral_at(const Profile& P, const Field& f, double c, double t);

// G(x_i) = sup_{y > x_i} U(x_i, y)^a S(y) over the grid points y. The last
// point repeats its neighbour.
std::vector<double> forward_sup(const Profile& P, const std::vector<double>& S_grid, double a);

// sup_t g(t) over the grid with a golden-section pass around the argmax.
// at may be empty, in which case no refinement is done.
Evaluated sup_on_grid(const Profile& P, const std::vector<double>& g_grid,
                      const std::function<double(double)>& at, Growth at_zero, Growth at_infinity);

// int_0^inf v(t) G(t)^e dt with G known on the grid and interpolated
// log-linearly in between.
Evaluated outer_integral(const Profile& P, const std::vector<double>& G_grid, double e,
                         Growth G_zero, Growth G_infinity);

// Estimate of int_X^inf f from the anchor value f(X), using the class of f.
double tail_beyond(double anchor, double previous, double X, double X_previous, const Growth& cls,
                   bool& numeric);
// Estimate of int_0^x f from the anchor value f(x).
double head_below(double anchor, double next, double x, double x_next, const Growth& cls,
                  bool& numeric);

}  // namespace copson
