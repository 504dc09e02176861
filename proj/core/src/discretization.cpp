#include "copson/discretization.hpp"

#include <algorithm>
#include <cmath>

#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/quadrature.hpp"

namespace copson {

namespace {

double level_value(const FundamentalFunction& F, LevelKind kind, double t) {
    return kind == LevelKind::PhiP ? F.phi_p(t) : F.V(t);
}

double solve_checked(const FundamentalFunction& F, LevelKind kind, double target, double lo,
                     double hi) {
    try {
        return F.solve_level(kind, target, lo, hi);
    } catch (const TargetNotBracketed& e) {
        throw LevelSolveFailed(e.what());
    }
}

// Point below t_k where the monotone value drops to target.
double solve_down(const FundamentalFunction& F, LevelKind kind, double target, double tk) {
    double hi = tk;
    if (is_inf(hi)) {
        hi = 1.0;
        for (int i = 0; level_value(F, kind, hi) < target; ++i) {
            if (i > 2000) throw LevelSolveFailed("no finite point reaches the level");
            hi *= 2.0;
        }
    }
    double lo = 0.5 * hi;
    for (int i = 0; level_value(F, kind, lo) > target; ++i) {
        if (i > 2000 || lo < 1e-300) throw LevelSolveFailed("level not reached near 0");
        hi = lo;
        lo *= 0.5;
    }
    return solve_checked(F, kind, target, lo, hi);
}

double solve_up(const FundamentalFunction& F, LevelKind kind, double target, double from) {
    double lo = from;
    double hi = 2.0 * from;
    for (int i = 0; level_value(F, kind, hi) < target; ++i) {
        if (i > 2000 || is_inf(hi)) throw LevelSolveFailed("level not reached towards inf");
        lo = hi;
        hi *= 2.0;
    }
    return solve_checked(F, kind, target, lo, hi);
}

double relative_shortfall(double lhs, double rhs) {
    if (!(rhs > 0.0)) return 0.0;
    if (is_inf(rhs)) return is_inf(lhs) ? 0.0 : 1.0;
    return std::max(0.0, (rhs - lhs) / rhs);
}

double relative_defect(double lhs, double rhs) {
    if (lhs == rhs) return 0.0;
    if (!(rhs > 0.0) || is_inf(rhs) || is_inf(lhs)) return 1.0;
    return std::abs(lhs - rhs) / rhs;
}

std::vector<double> merged_points(std::vector<double> pts, double lo, double hi) {
    std::vector<double> out{lo};
    std::sort(pts.begin(), pts.end());
    for (double x : pts) {
        if (x > out.back() && x < hi) out.push_back(x);
    }
    out.push_back(hi);
    return out;
}

}  // namespace

double DiscretizingSequence::at(int k) const {
    if (!contains(k)) throw IndexOutOfWindow("index " + std::to_string(k) + " outside the window");
    return t[static_cast<std::size_t>(k - kmin)];
}

Label DiscretizingSequence::label(int k) const {
    if (!contains(k)) throw IndexOutOfWindow("index " + std::to_string(k) + " outside the window");
    return labels[static_cast<std::size_t>(k - kmin)];
}

double SequenceResiduals::max() const { return std::max({v_growth, phi_growth, v_equality, phi_equality}); }

DiscretizingSequence build_sequence(const FundamentalFunction& F, int depth) {
    if (depth < 1) throw InvalidArgument("depth must be at least 1");
    F.require_admissible();
    DiscretizingSequence seq;
    seq.ratio = std::exp2(F.p() / F.m() + 1.0);
    const double R = seq.ratio;
    const bool finite_end = F.V_finite_at_infinity() || F.phi_finite_at_infinity();
    seq.K = finite_end ? KKind::Zero : KKind::Infinite;
    seq.t0_is_infinity = finite_end;

    // Downward from t_0; one extra step fixes the label of the lowest index.
    std::vector<double> down{finite_end ? kInf : 1.0};
    std::vector<Label> down_labels;
    for (int step = 0; step <= depth; ++step) {
        const double tk = down.back();
        const double v_level = F.V(tk);
        const double p_level = F.phi_p(tk);
        const double x = is_inf(v_level) ? kInf : solve_down(F, LevelKind::V, v_level / R, tk);
        const double y = is_inf(p_level) ? kInf : solve_down(F, LevelKind::PhiP, p_level / R, tk);
        down_labels.push_back(x <= y ? Label::InK1 : Label::InK2);
        if (step < depth) down.push_back(std::min(x, y));
    }
    seq.kmin = -depth;
    std::reverse(down.begin(), down.end());
    std::reverse(down_labels.begin(), down_labels.end());
    seq.t = down;
    seq.labels = down_labels;

    if (!finite_end) {
        for (int k = 1; k <= depth; ++k) {
            const double prev = seq.t.back();
            const double z = solve_up(F, LevelKind::V, R * F.V(prev), prev);
            const double s = solve_up(F, LevelKind::PhiP, R * F.phi_p(prev), prev);
            seq.t.push_back(std::max(z, s));
            seq.labels.push_back(z >= s ? Label::InK1 : Label::InK2);
        }
        seq.kmax = depth;
    } else {
        seq.kmax = 0;
    }
    return seq;
}

SequenceResiduals verify_sequence(const DiscretizingSequence& seq, const FundamentalFunction& F) {
    SequenceResiduals r;
    const double R = seq.ratio;
    for (int k = seq.kmin + 1; k <= seq.kmax; ++k) {
        const double v_hi = F.V(seq.at(k));
        const double v_lo = R * F.V(seq.at(k - 1));
        const double p_hi = F.phi_p(seq.at(k));
        const double p_lo = R * F.phi_p(seq.at(k - 1));
        r.v_growth = std::max(r.v_growth, relative_shortfall(v_hi, v_lo));
        r.phi_growth = std::max(r.phi_growth, relative_shortfall(p_hi, p_lo));
        if (seq.label(k) == Label::InK1) {
            r.v_equality = std::max(r.v_equality, relative_defect(v_hi, v_lo));
        } else {
            r.phi_equality = std::max(r.phi_equality, relative_defect(p_hi, p_lo));
        }
    }
    return r;
}

CoveringEstimate covering_estimates(const DiscretizingSequence& seq, const FundamentalFunction& F,
                                    int k, double t) {
    if (!seq.contains(k) || !seq.contains(k - 3)) {
        throw IndexOutOfWindow("covering estimates need indices k-3..k inside the window");
    }
    const double tk = seq.at(k);
    const double tk1 = seq.at(k - 1);
    const double tk2 = seq.at(k - 2);
    const double tk3 = seq.at(k - 3);
    if (t < tk1 || t > tk) throw InvalidArgument("t must lie in [t_{k-1}, t_k]");
    const double a = F.p() / F.m();
    const double R = seq.ratio;
    const WeightExpr& v = F.v();
    const double tol = F.tol() / 10;

    CoveringEstimate c;
    c.v_lhs = F.V(tk);
    c.v_rhs = R / (R - 1.0) * v.integrate(tk1, tk, tol);
    c.phi_lhs = F.phi_p(t);
    const double first = ext_mul(v.integrate(tk3, tk2, tol), ext_pow(F.U(tk2, tk1), a));
    const double second = F.inner_from(tk2, tk1, a);
    const double third = ext_mul(v.integrate(tk2, tk1, tol), ext_pow(F.U(tk1, t), a));
    c.phi_rhs = std::exp2(3.0 * a + 3.0) / (R - 1.0) * first + std::exp2(a + 2.0) * second +
              3.0 * std::exp2(2.0 * a + 1.0) / (R - 1.0) * third;
    return c;
}

double continuous_functional(const WeightExpr& u, const WeightExpr& v, double m, double p,
                             const StepFunction& h, double tol) {
    if (!(m > 0.0) || !(p > 0.0)) throw InvalidArgument("m and p must be positive");
    for (double x : h.values()) {
        if (x < 0.0) throw InvalidArgument("h must be nonnegative");
    }
    if (h.is_zero()) return 0.0;
    if (!integrable(v.asymptotic(End::Zero), End::Zero)) return kInf;
    const double T = h.support_end();
    std::vector<double> cuts = h.knots();
    cuts.insert(cuts.end(), u.breakpoints().begin(), u.breakpoints().end());
    cuts.insert(cuts.end(), v.breakpoints().begin(), v.breakpoints().end());
    const std::vector<double> pts = merged_points(cuts, 0.0, T);
    const double inner_tol = tol / 10;

    auto inner_integrand = [&](double s) {
        const double us = u.eval(s);
        if (us == 0.0) return 0.0;
        return ext_mul(us, ext_pow(h.integral_from(s), m));
    };
    // G at the cut points, accumulated from the right end of the support.
    std::vector<double> G(pts.size(), 0.0);
    for (std::size_t j = pts.size() - 1; j-- > 0;) {
        G[j] = G[j + 1] + quad::finite(inner_integrand, pts[j], pts[j + 1], inner_tol);
    }
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
        const double right = pts[j + 1];
        const double g_right = G[j + 1];
        auto outer = [&](double t) {
            const double vt = v.eval(t);
            if (vt == 0.0) return 0.0;
            const double g = g_right + quad::finite(inner_integrand, t, right, inner_tol);
            return ext_mul(vt, ext_pow(g, p / m));
        };
        total += quad::finite(outer, pts[j], right, tol);
        if (is_inf(total)) return kInf;
    }
    return total;
}

double discretized_functional(const DiscretizingSequence& seq, const FundamentalFunction& F,
                              const StepFunction& h, DiscreteForm form) {
    for (double x : h.values()) {
        if (x < 0.0) throw InvalidArgument("h must be nonnegative");
    }
    if (h.is_zero()) return 0.0;
    const double T = h.support_end();
    if (seq.K == KKind::Infinite && T > seq.at(seq.kmax)) {
        throw SupportNotCovered("support of h extends beyond t_kmax = " +
                                format_number(seq.at(seq.kmax)));
    }
    const double m = F.m();
    const double p = F.p();
    const double tol = F.tol();
    std::vector<double> cuts = h.knots();
    cuts.insert(cuts.end(), F.u().breakpoints().begin(), F.u().breakpoints().end());
    cuts.insert(cuts.end(), F.v().breakpoints().begin(), F.v().breakpoints().end());

    double total = 0.0;
    for (int k = seq.kmin + 1; k <= seq.kmax; ++k) {
        const double lo = seq.at(k - 1);
        const double tk = seq.at(k);
        const double hi = std::min(tk, T);
        if (!(hi > lo)) continue;
        const double tail_beyond = is_inf(tk) ? 0.0 : h.integral_from(tk);
        const std::vector<double> pts = merged_points(cuts, lo, hi);
        double block = 0.0;
        for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
            const double alpha = pts[j];
            const double beta = pts[j + 1];
            const double c = h.eval(alpha);
            const double h_beta = std::max(0.0, h.integral_from(beta) - tail_beyond);
            if (form == DiscreteForm::Blocks) {
                if (c == 0.0) continue;
                auto f = [&](double d) {
                    const double y = beta - d;
                    if (m == 1.0) return F.phi(y) * c;
                    return ext_mul(ext_pow(F.phi(y), m), ext_pow(h_beta + c * d, m - 1.0)) * c;
                };
                block += quad::finite(f, 0.0, beta - alpha, tol);
            } else {
                if (c == 0.0 && h_beta == 0.0) continue;
                auto f = [&](double d) {
                    const double y = beta - d;
                    const double tail = ext_pow(h_beta + c * d, m);
                    if (tail == 0.0) return 0.0;
                    const double lead = ext_mul(ext_pow(F.phi(y), m - 1.0), F.phi_prime(y));
                    return ext_mul(lead, tail);
                };
                block += quad::finite(f, 0.0, beta - alpha, tol);
            }
        }
        total += ext_pow(block, p / m);
        if (form == DiscreteForm::Derivative) {
            const double mass = h.integral_from(lo) - (is_inf(tk) ? 0.0 : h.integral_from(tk));
            total += ext_mul(F.phi_p(lo), ext_pow(std::max(mass, 0.0), p));
        }
    }
    return total;
}

}  // namespace copson
