#include "copson/conditions_m1.hpp"

#include "copson/errors.hpp"
#include "copson/extended.hpp"

namespace copson {

namespace {

void require_m1(const Profile& P) {
    if (P.F().m() != 1.0) throw InvalidArgument("A1..A6 are the m = 1 conditions");
}

double q_prime(double q) { return q / (q - 1.0); }

// W^{1-q'} u Psi / Phi^{d}.
Field weighted_field(const Profile& P, double q, double d) {
    if (!P.has_psi()) throw InvalidArgument("profile was built without psi");
    const double wexp = 1.0 - q_prime(q);
    auto fn = [wexp, d](const Sample& s) {
        if (s.u == 0.0 || s.W == 0.0) return 0.0;
        const double num = ext_mul(ext_mul(ext_pow(s.W, wexp), s.u), s.Psi);
        return ext_div(num, ext_pow(s.Phi, d));
    };
    auto cls = [&](End end) {
        const Growth num = mul(mul(pow(P.W_growth(end), wexp), P.u_growth(end)), P.psi_growth(end));
        return mul(num, pow(P.phi_growth(end), -d));
    };
    return make_field(P, fn, cls(End::Zero), cls(End::Infinity));
}

}  // namespace

Evaluated condition_A1(const Profile& P, double p, double q) {
    require_m1(P);
    std::vector<double> g;
    g.reserve(P.size());
    auto ratio = [p, q](double W, double Phi) { return ext_div(ext_pow(W, 1.0 / q), ext_pow(Phi, 1.0 / p)); };
    for (const Sample& s : P.grid()) g.push_back(ratio(s.W, s.Phi));
    auto at = [&](double t) { return ratio(P.W()(t), P.F().phi_p(t)); };
    auto cls = [&](End end) {
        return mul(pow(P.W_growth(end), 1.0 / q), pow(P.phi_growth(end), -1.0 / p));
    };
    return sup_on_grid(P, g, at, cls(End::Zero), cls(End::Infinity));
}

Evaluated condition_A2(const Profile& P, double p, double q) {
    require_m1(P);
    const double r = p * q / (p - q);
    std::vector<double> S;
    S.reserve(P.size());
    for (const Sample& s : P.grid()) S.push_back(ext_div(ext_pow(s.W, r / q), ext_pow(s.Phi, r / q)));
    auto S_cls = [&](End end) { return mul(pow(P.W_growth(end), r / q), pow(P.phi_growth(end), -r / q)); };
    const Growth Sinf = S_cls(End::Infinity);
    const Growth S0 = S_cls(End::Zero);
    const Growth unbounded = mul(pow(P.U_growth(End::Infinity), p), Sinf);
    if (trend(unbounded, End::Infinity) == Trend::Diverges) return {kInf, false};
    const std::vector<double> G = forward_sup(P, S, p);
    Growth G0 = Growth::constant();
    const Growth reach0 = mul(pow(P.U_growth(End::Zero), p), S0);
    if (!reach0.known()) {
        G0 = Growth::unknown();
    } else if (trend(reach0, End::Zero) == Trend::Diverges) {
        G0 = mul(pow(P.U_local(End::Zero), p), S0);
    }
    const Growth Ginf = mul(pow(P.U_local(End::Infinity), p), Sinf);
    Evaluated I = outer_integral(P, G, 1.0, G0, Ginf);
    I.numeric = I.numeric || !unbounded.known();
    I.value = ext_pow(I.value, 1.0 / r);
    return I;
}

Evaluated condition_A3(const Profile& P, double p, double q) {
    require_m1(P);
    const double qp = q_prime(q);
    const Field f = weighted_field(P, q, 2.0 - qp / p);
    const TailIntegral T = tail_integral(P, f, p);
    std::vector<double> g(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        g[i] = ext_pow(ext_mul(P.grid()[i].V, T.grid[i]), -1.0 / qp);
    }
    auto at = [&](double t) { return ext_pow(ext_mul(P.F().V(t), tail_integral_at(P, f, p, t)), -1.0 / qp); };
    Evaluated out = sup_on_grid(P, g, at, pow(mul(P.V_growth(End::Zero), T.zero), -1.0 / qp),
                                pow(mul(P.V_growth(End::Infinity), T.infinity), -1.0 / qp));
    out.numeric = out.numeric || T.numeric;
    return out;
}

Evaluated condition_A4(const Profile& P, double p, double q) {
    require_m1(P);
    const double qp = q_prime(q);
    const Field f = weighted_field(P, q, 2.0 - qp / p);
    const TailIntegral T = tail_integral(P, f, 0.0);
    std::vector<double> g(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        g[i] = ext_pow(ext_mul(P.grid()[i].Phi, T.grid[i]), -1.0 / qp);
    }
    auto at = [&](double t) {
        return ext_pow(ext_mul(P.F().phi_p(t), tail_integral_at(P, f, 0.0, t)), -1.0 / qp);
    };
    Evaluated out = sup_on_grid(P, g, at, pow(mul(P.phi_growth(End::Zero), T.zero), -1.0 / qp),
                                pow(mul(P.phi_growth(End::Infinity), T.infinity), -1.0 / qp));
    out.numeric = out.numeric || T.numeric;
    return out;
}

Evaluated condition_A5(const Profile& P, double p, double q) {
    require_m1(P);
    return {ext_div(ext_pow(P.W_infinity(), 1.0 / q), ext_pow(P.phi_p_infinity(), 1.0 / p)), false};
}

Evaluated condition_A6(const Profile& P, double p, double q) {
    require_m1(P);
    const double qp = q_prime(q);
    const double r = p * q / (p - q);
    const Field f = weighted_field(P, q, 2.0 - qp);
    const TailIntegral T = tail_integral(P, f, (p - q) / (1.0 - q));
    Evaluated I = outer_integral(P, T.grid, -r / qp, T.zero, T.infinity);
    I.numeric = I.numeric || T.numeric;
    I.value = ext_pow(I.value, 1.0 / r);
    return I;
}

M1Report m1_conditions(const Profile& P, double q) {
    require_m1(P);
    const double p = P.F().p();
    M1Report r;
    r.regime = classify(1.0, p, q).regime;
    auto put = [&r](const char* name, const Evaluated& x) {
        r.conditions[name] = x.value;
        r.C_estimate += x.value;
        r.numeric_endpoints = r.numeric_endpoints || x.numeric;
    };
    switch (r.regime) {
        case Case::I:
            put("A1", condition_A1(P, p, q));
            break;
        case Case::II:
            put("A2", condition_A2(P, p, q));
            break;
        case Case::III:
            put("A3", condition_A3(P, p, q));
            put("A4", condition_A4(P, p, q));
            put("A5", condition_A5(P, p, q));
            break;
        case Case::IV:
            put("A5", condition_A5(P, p, q));
            put("A6", condition_A6(P, p, q));
            break;
    }
    return r;
}

}  // namespace copson
