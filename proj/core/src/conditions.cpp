#include "copson/conditions.hpp"

#include "copson/errors.hpp"
#include "copson/extended.hpp"

namespace copson {

namespace {

void require_case(const Exponents& e, Case c, const char* name) {
    if (e.regime != c) {
        throw InvalidArgument(std::string(name) + " needs case " + to_string(c) + ", got case " +
                              to_string(e.regime));
    }
}

Evaluated merge(Evaluated a, bool numeric) {
    a.numeric = a.numeric || numeric;
    return a;
}

// Class of G(t) = sup_{y>t} U(t,y)^a S(y) at both ends.
std::pair<Growth, Growth> forward_sup_classes(const Profile& P, double a, const Growth& S0,
                                              const Growth& Sinf) {
    const Growth near_zero = mul(pow(P.U_growth(End::Zero), a), S0);
    const Growth G0 = trend(near_zero, End::Zero) == Trend::Diverges
                          ? mul(pow(P.U_local(End::Zero), a), S0)
                          : (near_zero.known() ? Growth::constant() : Growth::unknown());
    const Growth Ginf = mul(pow(P.U_local(End::Infinity), a), Sinf);
    return {G0, Ginf};
}

// W^alpha u Psi Phi^{-delta}, the integrand shared by A9, A10 and A12.
Field tail_field(const Profile& P, double alpha, double delta) {
    auto fn = [alpha, delta](const Sample& s) {
        if (s.u == 0.0 || s.W == 0.0) return 0.0;
        return ext_mul(ext_mul(ext_pow(s.W, alpha), s.u), ext_mul(s.Psi, ext_pow(s.Phi, -delta)));
    };
    auto cls = [&](End end) {
        return mul(mul(pow(P.W_growth(end), alpha), P.u_growth(end)),
                   mul(P.psi_growth(end), pow(P.phi_growth(end), -delta)));
    };
    return make_field(P, fn, cls(End::Zero), cls(End::Infinity));
}

}  // namespace

bool needs_psi(Case c) { return c == Case::III || c == Case::IV; }

Profile make_profile(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                     const Exponents& e, const GridOptions& grid) {
    FundamentalFunction F(u, v, e.m, e.p, grid.tol);
    F.require_admissible();
    return Profile(F, Primitive::of_weight(w, grid.tol / 10), grid, needs_psi(e.regime));
}

Evaluated condition_A7(const Profile& P, const Exponents& e) {
    const double q = e.q;
    const double p = e.p;
    auto g = [q, p](const Sample& s) { return ext_mul(ext_pow(s.W, 1.0 / q), ext_pow(s.Phi, -1.0 / p)); };
    std::vector<double> values;
    values.reserve(P.size());
    for (const Sample& s : P.grid()) values.push_back(g(s));
    auto cls = [&](End end) {
        return mul(pow(P.W_growth(end), 1.0 / q), pow(P.phi_growth(end), -1.0 / p));
    };
    auto at = [&](double t) { return g(P.sample(t)); };
    return sup_on_grid(P, values, at, cls(End::Zero), cls(End::Infinity));
}

Evaluated condition_A8(const Profile& P, const Exponents& e) {
    const double m = e.m;
    const double p = e.p;
    const double q = e.q;
    const double b = p / (p - q);
    std::vector<double> S;
    S.reserve(P.size());
    for (const Sample& s : P.grid()) S.push_back(ext_mul(ext_pow(s.W, b), ext_pow(s.Phi, -b)));
    auto S_cls = [&](End end) { return mul(pow(P.W_growth(end), b), pow(P.phi_growth(end), -b)); };
    const Growth S0 = S_cls(End::Zero);
    const Growth Sinf = S_cls(End::Infinity);
    bool numeric = false;
    // The inner sup is infinite when U(t,y)^{p/m} S(y) is unbounded as y -> inf.
    const Growth reach = mul(pow(P.U_growth(End::Infinity), p / m), Sinf);
    if (trend(reach, End::Infinity) == Trend::Diverges) return {kInf, false};
    if (!reach.known()) numeric = true;
    const std::vector<double> G = forward_sup(P, S, p / m);
    const auto [G0, Ginf] = forward_sup_classes(P, p / m, S0, Sinf);
    const Evaluated outer = outer_integral(P, G, 1.0, G0, Ginf);
    return merge({ext_pow(outer.value, (p - q) / (p * q)), outer.numeric}, numeric);
}

Evaluated condition_A11(const Profile& P, const Exponents& e) {
    return {ext_mul(ext_pow(P.W_infinity(), 1.0 / e.q), ext_pow(P.phi_p_infinity(), -1.0 / e.p)),
            false};
}

CaseIIIValues condition_A9_A10_A11(const Profile& P, const Exponents& e) {
    const double m = e.m;
    const double p = e.p;
    const double q = e.q;
    const double alpha = m / (m - q);
    const double delta = 2.0 + m * q / (p * (m - q));
    const double outer = (m - q) / (m * q);
    const double a = p / m;
    const Field f = tail_field(P, alpha, delta);
    CaseIIIValues out;

    const TailIntegral T9 = tail_integral(P, f, a);
    std::vector<double> g9(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) g9[i] = ext_pow(ext_mul(P.grid()[i].V, T9.grid[i]), outer);
    auto at9 = [&](double t) {
        return ext_pow(ext_mul(P.F().V(t), tail_integral_at(P, f, a, t)), outer);
    };
    out.A9 = merge(sup_on_grid(P, g9, at9, pow(mul(P.V_growth(End::Zero), T9.zero), outer),
                               pow(mul(P.V_growth(End::Infinity), T9.infinity), outer)),
                   T9.numeric);

    const TailIntegral T10 = tail_integral(P, f, 0.0);
    std::vector<double> g10(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        g10[i] = ext_pow(ext_mul(P.grid()[i].Phi, T10.grid[i]), outer);
    }
    auto at10 = [&](double t) {
        return ext_pow(ext_mul(P.F().phi_p(t), tail_integral_at(P, f, 0.0, t)), outer);
    };
    out.A10 = merge(sup_on_grid(P, g10, at10, pow(mul(P.phi_growth(End::Zero), T10.zero), outer),
                                pow(mul(P.phi_growth(End::Infinity), T10.infinity), outer)),
                    T10.numeric);

    out.A11 = condition_A11(P, e);
    return out;
}

Evaluated condition_A12(const Profile& P, const Exponents& e) {
    const double m = e.m;
    const double p = e.p;
    const double q = e.q;
    const Field f = tail_field(P, m / (m - q), 1.0 + m / (m - q));
    const TailIntegral T = tail_integral(P, f, (p - q) / (m - q));
    const Evaluated outer =
        outer_integral(P, T.grid, p * (m - q) / (m * (p - q)), T.zero, T.infinity);
    return merge({ext_pow(outer.value, (p - q) / (p * q)), outer.numeric}, T.numeric);
}

double condition_A7(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                    const Exponents& e, const GridOptions& grid) {
    require_case(e, Case::I, "A7");
    return condition_A7(make_profile(u, v, w, e, grid), e).value;
}

double condition_A8(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                    const Exponents& e, const GridOptions& grid) {
    require_case(e, Case::II, "A8");
    return condition_A8(make_profile(u, v, w, e, grid), e).value;
}

CaseIIIValues condition_A9_A10_A11(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                                   const Exponents& e, const GridOptions& grid) {
    require_case(e, Case::III, "A9, A10, A11");
    return condition_A9_A10_A11(make_profile(u, v, w, e, grid), e);
}

double condition_A12(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                     const Exponents& e, const GridOptions& grid) {
    require_case(e, Case::IV, "A12");
    return condition_A12(make_profile(u, v, w, e, grid), e).value;
}

ConditionReport conditions_from_profile(const Profile& P, const Exponents& e) {
    ConditionReport r;
    r.exponents = e;
    auto put = [&r](const char* name, const Evaluated& x) {
        r.conditions[name] = x.value;
        r.numeric_endpoints = r.numeric_endpoints || x.numeric;
    };
    switch (e.regime) {
        case Case::I:
            put("A7", condition_A7(P, e));
            break;
        case Case::II:
            put("A8", condition_A8(P, e));
            break;
        case Case::III: {
            const CaseIIIValues c = condition_A9_A10_A11(P, e);
            put("A9", c.A9);
            put("A10", c.A10);
            put("A11", c.A11);
            break;
        }
        case Case::IV:
            put("A11", condition_A11(P, e));
            put("A12", condition_A12(P, e));
            break;
    }
    r.C_estimate = 0.0;
    for (const auto& [name, value] : r.conditions) r.C_estimate += value;
    r.embedding_holds = !is_inf(r.C_estimate);
    return r;
}

ConditionReport embedding_constant(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                                   double m, double p, double q, const GridOptions& grid) {
    const Exponents e = classify(m, p, q);
    return conditions_from_profile(make_profile(u, v, w, e, grid), e);
}

}  // namespace copson
