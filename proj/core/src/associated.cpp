#include "copson/associated.hpp"

#include "copson/errors.hpp"
#include "copson/extended.hpp"

namespace copson {

namespace {

// t g**(t) with its classes: like t near 0, constant near inf.
double mass(const StepFunction& gs, double t) { return running_average(gs, t) * t; }

// sup_t g**(t) t Phi(t)^{-1/p}.
Evaluated quadrant_i(const Profile& P, const StepFunction& gs, double p) {
    auto ratio = [&](double t, double Phi) { return ext_mul(mass(gs, t), ext_pow(Phi, -1.0 / p)); };
    std::vector<double> g(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) g[i] = ratio(P.x()[i], P.grid()[i].Phi);
    auto at = [&](double t) { return ratio(t, P.F().phi_p(t)); };
    return sup_on_grid(P, g, at, mul(Growth::regular(1.0), pow(P.phi_growth(End::Zero), -1.0 / p)),
                       pow(P.phi_growth(End::Infinity), -1.0 / p));
}

// (int v(t) sup_{y>t} U^{p/m}(t,y) (g**(y) y)^{p'} / Phi^{p'}(y) dt)^{1/p'}.
Evaluated quadrant_ii(const Profile& P, const StepFunction& gs, double m, double p) {
    const double pc = p / (p - 1.0);
    const double a = p / m;
    std::vector<double> S(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        S[i] = ext_div(ext_pow(mass(gs, P.x()[i]), pc), ext_pow(P.grid()[i].Phi, pc));
    }
    const Growth S0 = mul(Growth::regular(pc), pow(P.phi_growth(End::Zero), -pc));
    const Growth Sinf = pow(P.phi_growth(End::Infinity), -pc);
    const Growth reach = mul(pow(P.U_growth(End::Infinity), a), Sinf);
    if (trend(reach, End::Infinity) == Trend::Diverges) return {kInf, false};
    const std::vector<double> G = forward_sup(P, S, a);
    const Growth near0 = mul(pow(P.U_growth(End::Zero), a), S0);
    Growth G0 = near0.known() ? Growth::constant() : Growth::unknown();
    if (trend(near0, End::Zero) == Trend::Diverges) G0 = mul(pow(P.U_local(End::Zero), a), S0);
    Evaluated I = outer_integral(P, G, 1.0, G0, mul(pow(P.U_local(End::Infinity), a), Sinf));
    I.numeric = I.numeric || !reach.known();
    I.value = ext_pow(I.value, 1.0 / pc);
    return I;
}

// (g** y)^{m'} u Psi / Phi^{d}.
Field mass_field(const Profile& P, const StepFunction& gs, double mc, double d) {
    auto fn = [&gs, mc, d](const Sample& s) {
        if (s.u == 0.0) return 0.0;
        const double num = ext_mul(ext_mul(ext_pow(mass(gs, s.t), mc), s.u), s.Psi);
        return ext_div(num, ext_pow(s.Phi, d));
    };
    auto cls = [&](End end) {
        const Growth W = end == End::Zero ? Growth::regular(1.0) : Growth::constant();
        return mul(mul(pow(W, mc), P.u_growth(end)), mul(P.psi_growth(end), pow(P.phi_growth(end), -d)));
    };
    return make_field(P, fn, cls(End::Zero), cls(End::Infinity));
}

// sup_t (outer(t) int_t^inf f U^c)^{1/m'}.
Evaluated tail_sup(const Profile& P, const Field& f, double c, double mc, bool with_V) {
    const TailIntegral T = tail_integral(P, f, c);
    std::vector<double> g(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        const Sample& s = P.grid()[i];
        g[i] = ext_pow(ext_mul(with_V ? s.V : s.Phi, T.grid[i]), 1.0 / mc);
    }
    auto at = [&](double t) {
        const double lead = with_V ? P.F().V(t) : P.F().phi_p(t);
        return ext_pow(ext_mul(lead, tail_integral_at(P, f, c, t)), 1.0 / mc);
    };
    auto lead = [&](End end) { return with_V ? P.V_growth(end) : P.phi_growth(end); };
    Evaluated out = sup_on_grid(P, g, at, pow(mul(lead(End::Zero), T.zero), 1.0 / mc),
                                pow(mul(lead(End::Infinity), T.infinity), 1.0 / mc));
    out.numeric = out.numeric || T.numeric;
    return out;
}

}  // namespace

Quadrant quadrant(double m, double p) {
    if (!(m > 0.0) || !(p > 0.0)) throw InvalidArgument("m and p must be positive");
    if (m <= 1.0) return p <= 1.0 ? Quadrant::i : Quadrant::ii;
    return p <= 1.0 ? Quadrant::iii : Quadrant::iv;
}

std::string to_string(Quadrant q) {
    switch (q) {
        case Quadrant::i: return "i";
        case Quadrant::ii: return "ii";
        case Quadrant::iii: return "iii";
        case Quadrant::iv: return "iv";
    }
    return "?";
}

AssociatedReport associated_report(const WeightExpr& u, const WeightExpr& v, double m, double p,
                                   const StepFunction& g, const GridOptions& grid) {
    AssociatedReport r;
    r.quadrant = quadrant(m, p);
    FundamentalFunction F(u, v, m, p, grid.tol);
    F.require_admissible();
    const StepFunction gs = rearrange(g);
    if (gs.is_zero()) return r;
    const bool psi = r.quadrant == Quadrant::iii || r.quadrant == Quadrant::iv;
    const Profile P(F, Primitive::of_step(gs), grid, psi);
    auto put = [&r](const char* name, const Evaluated& x) {
        r.terms[name] = x.value;
        r.norm += x.value;
        r.numeric_endpoints = r.numeric_endpoints || x.numeric;
    };
    const double l1 = ext_div(gs.integral(), ext_pow(P.phi_p_infinity(), 1.0 / p));
    switch (r.quadrant) {
        case Quadrant::i:
            put("sup", quadrant_i(P, gs, p));
            break;
        case Quadrant::ii:
            put("integral", quadrant_ii(P, gs, m, p));
            break;
        case Quadrant::iii: {
            const double mc = m / (m - 1.0);
            const Field f = mass_field(P, gs, mc, 2.0 + mc / p);
            put("l1", {l1, false});
            put("sup_V", tail_sup(P, f, p / m, mc, true));
            put("sup_phi", tail_sup(P, f, 0.0, mc, false));
            break;
        }
        case Quadrant::iv: {
            const double mc = m / (m - 1.0);
            const double pc = p / (p - 1.0);
            const Field f = mass_field(P, gs, mc, 1.0 + mc);
            const TailIntegral T = tail_integral(P, f, (p - 1.0) / (m - 1.0));
            Evaluated I = outer_integral(P, T.grid, p * (m - 1.0) / (m * (p - 1.0)), T.zero, T.infinity);
            I.numeric = I.numeric || T.numeric;
            I.value = ext_pow(I.value, 1.0 / pc);
            put("l1", {l1, false});
            put("integral", I);
            break;
        }
    }
    return r;
}

double associated_norm(const WeightExpr& u, const WeightExpr& v, double m, double p,
                       const StepFunction& g, const GridOptions& grid) {
    return associated_report(u, v, m, p, g, grid).norm;
}

}  // namespace copson
