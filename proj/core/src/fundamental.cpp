#include "copson/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/quadrature.hpp"

namespace copson {

namespace {

double support_start(const WeightExpr& w) {
    double lo = kInf;
    for (const Term& t : w.terms()) lo = std::min(lo, t.lo);
    return lo;
}

bool near_exponent(double a, double b) { return std::abs(a - b) <= kExponentSlack; }

}  // namespace

FundamentalFunction::FundamentalFunction(WeightExpr u, WeightExpr v, double m, double p, double tol)
    : u_(std::move(u)), v_(std::move(v)), m_(m), p_(p), tol_(tol), memo_(std::make_shared<Memo>()) {
    if (!(m > 0.0) || !(p > 0.0)) throw InvalidArgument("m and p must be positive");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    breaks_ = joint_breaks();
}

std::vector<double> FundamentalFunction::joint_breaks() const {
    std::vector<double> b = u_.breakpoints();
    b.insert(b.end(), v_.breakpoints().begin(), v_.breakpoints().end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double FundamentalFunction::V(double t) const { return v_.integrate(0.0, t, tol_ / 10); }

double FundamentalFunction::U(double s, double t) const { return u_.integrate(s, t, tol_ / 10); }

double FundamentalFunction::inner(double t, double e) const {
    if (is_inf(t)) return inner_at_infinity(e);
    return inner_from(0.0, t, e);
}

double FundamentalFunction::inner_from(double a, double t, double e) const {
    if (!(t > a)) return 0.0;
    const double inner_tol = tol_ / 10;
    auto f = [&](double s) {
        const double vs = v_.eval(s);
        if (vs == 0.0) return 0.0;
        return ext_mul(vs, ext_pow(u_.integrate(s, t, inner_tol), e));
    };
    auto near = [&](double d) {
        const double vs = v_.eval(t - d);
        if (vs == 0.0) return 0.0;
        const double U = u_.integrate_back(t, d, inner_tol);
        if (U == 0.0 && e < 0.0 && d > 0.0) {
            // U underflowed; use U ~ u(t) d in log space
            const double ut = u_.eval(t);
            if (ut == 0.0) return 0.0;
            return std::exp(std::log(vs) + e * (std::log(ut) + std::log(d)));
        }
        return ext_mul(vs, ext_pow(U, e));
    };
    double total = 0.0;
    double lo = a;
    for (double b : breaks_) {
        if (b <= lo) continue;
        if (b >= t) break;
        total += quad::finite(f, lo, b, tol_);
        lo = b;
    }
    total += quad::with_right_distance(f, near, lo, t, tol_);
    return total;
}

double FundamentalFunction::inner_at_infinity(double e) const {
    if (v_.is_zero()) return 0.0;
    const Growth u_inf = u_.asymptotic(End::Infinity);
    const Growth v_inf = v_.asymptotic(End::Infinity);
    const bool u_tail_finite = !is_inf(u_.integrate(breaks_.empty() ? 1.0 : breaks_.back() + 1.0, kInf));
    if (!u_tail_finite) {
        if (e > 0.0) return kInf;
        if (e == 0.0) return V(kInf);
        return 0.0;
    }
    if (e < 0.0 && u_inf.is_zero() && !v_inf.is_zero()) return kInf;
    const Growth integrand = mul(v_inf, pow(tail_near_infinity(u_inf), e));
    if (integrand.known() && !integrable(integrand, End::Infinity)) return kInf;
    const double inner_tol = tol_ / 10;
    auto f = [&](double s) {
        const double vs = v_.eval(s);
        if (vs == 0.0) return 0.0;
        return ext_mul(vs, ext_pow(u_.integrate(s, kInf, inner_tol), e));
    };
    const double value = quad::piecewise(f, breaks_, 0.0, kInf, tol_);
    return std::isfinite(value) ? value : kInf;
}

double FundamentalFunction::phi_p(double t) const {
    {
        std::shared_lock lock(memo_->mutex);
        auto it = memo_->values.find(t);
        if (it != memo_->values.end()) return it->second;
    }
    const double value = inner(t, p_ / m_);
    std::unique_lock lock(memo_->mutex);
    memo_->values.emplace(t, value);
    return value;
}

double FundamentalFunction::phi(double t) const { return ext_pow(phi_p(t), 1.0 / p_); }

double FundamentalFunction::psi(double t) const { return inner(t, p_ / m_ - 1.0); }

double FundamentalFunction::phi_prime(double t) const {
    const double ut = u_.eval(t);
    if (ut == 0.0) return 0.0;
    const double ph = phi(t);
    if (ph == 0.0 && p_ > 1.0) {
        throw DegenerateAtPoint("phi vanishes at t = " + format_number(t) + " and p > 1");
    }
    return ext_mul(ext_mul(ext_pow(ph, 1.0 - p_), ut), psi(t)) / m_;
}

Admissibility FundamentalFunction::is_admissible(int probe_depth) const {
    const double smallest = std::ldexp(1.0, -probe_depth);
    auto zero = [](double t, std::string why) {
        return Admissibility{Admissibility::Status::DegenerateZero, t, std::move(why)};
    };
    auto infinite = [](double t, std::string why) {
        return Admissibility{Admissibility::Status::DegenerateInfinite, t, std::move(why)};
    };
    if (u_.is_zero()) return zero(smallest, "u vanishes identically");
    if (v_.is_zero()) return zero(smallest, "v vanishes identically");
    const Growth u0 = u_.asymptotic(End::Zero);
    const Growth v0 = v_.asymptotic(End::Zero);
    if (v0.is_zero()) return zero(0.5 * support_start(v_), "v vanishes near 0");
    if (u0.is_zero()) return zero(0.5 * support_start(u_), "u vanishes near 0");
    const Growth u_shape = integrable(u0, End::Zero) ? Growth::constant() : tail_near_zero(u0);
    if (!integrable(mul(v0, pow(u_shape, p_ / m_)), End::Zero)) {
        return infinite(smallest, "v U^{p/m} is not integrable near 0");
    }
    for (int j = -probe_depth; j <= probe_depth; ++j) {
        const double t = std::ldexp(1.0, j);
        const double value = phi_p(t);
        if (value == 0.0) return zero(t, "phi vanishes on the probe grid");
        if (!std::isfinite(value)) return infinite(t, "phi is infinite on the probe grid");
    }
    return {};
}

void FundamentalFunction::require_admissible(int probe_depth) const {
    const Admissibility a = is_admissible(probe_depth);
    if (!a.ok()) throw NotAdmissible("pair (u, v) is not admissible: " + a.reason, a.witness);
}

double FundamentalFunction::solve_level(LevelKind kind, double target, double lo, double hi) const {
    auto value = [&](double t) { return kind == LevelKind::PhiP ? phi_p(t) : V(t); };
    if (!(target > 0.0) || !(lo >= 0.0) || !(hi > lo)) {
        throw InvalidArgument("solve_level needs target > 0 and 0 <= lo < hi");
    }
    const double f_lo = value(lo);
    const double f_hi = value(hi);
    const double accept = 1e-13 * target;
    if (!(f_lo <= target + accept) || !(f_hi >= target - accept)) {
        throw TargetNotBracketed("level " + format_number(target) + " not bracketed by [" +
                                 format_number(lo) + ", " + format_number(hi) + "]");
    }
    if (std::abs(f_lo - target) <= accept) return lo;
    if (std::abs(f_hi - target) <= accept) return hi;
    double best = hi;
    double best_gap = std::abs(f_hi - target);
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = lo > 0.0 && std::isfinite(hi) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double fm = value(mid);
        const double gap = std::abs(fm - target);
        if (gap < best_gap) {
            best = mid;
            best_gap = gap;
        }
        if (gap <= accept) return mid;
        if (fm < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return best;
}

Growth FundamentalFunction::inner_growth(double e, End end) const {
    const Growth uc = u_.asymptotic(end);
    const Growth vc = v_.asymptotic(end);
    if (e == 0.0) return end == End::Zero ? primitive_near_zero(vc) : primitive_near_infinity(vc);
    if (!uc.known() || !vc.known()) return Growth::unknown();
    if (end == End::Zero) {
        if (vc.is_zero()) return Growth::zero();
        if (uc.is_zero()) return e > 0.0 ? Growth::zero() : Growth::unknown();
        if (uc.power <= -1.0 || vc.power <= -1.0) return Growth::unknown();
        return Growth::regular(vc.power + 1.0 + e * (uc.power + 1.0));
    }
    if (uc.is_zero()) return e > 0.0 ? Growth::constant() : Growth::unknown();
    if (vc.is_zero()) return pow(primitive_near_infinity(uc), e);
    const double beta = uc.power;
    const double gamma = vc.power;
    const double mu = vc.rate;
    const double nu = uc.rate;
    if (nu == 0.0 && mu == 0.0) {
        if (near_exponent(beta, -1.0) || near_exponent(gamma, -1.0)) return Growth::unknown();
        if (beta > -1.0) return Growth::regular(e * (beta + 1.0) + std::max(gamma + 1.0, 0.0));
        const double x = gamma + 1.0 + e * (beta + 1.0);
        if (near_exponent(x, 0.0)) return Growth::unknown();
        return x > 0.0 ? Growth::regular(x) : Growth::constant();
    }
    if (nu == 0.0 && mu > 0.0) return Growth::regular(gamma + e * beta, 0.0, mu);
    if (nu == 0.0 && mu < 0.0) {
        if (near_exponent(beta, -1.0)) return Growth::unknown();
        return beta > -1.0 ? Growth::regular(e * (beta + 1.0)) : Growth::constant();
    }
    if (nu > 0.0 && mu == 0.0) {
        if (near_exponent(gamma, -1.0)) return Growth::unknown();
        return Growth::regular(e * beta + std::max(gamma + 1.0, 0.0), 0.0, e * nu);
    }
    if (nu > 0.0 && mu < 0.0) return Growth::regular(e * beta, 0.0, e * nu);
    if (nu < 0.0 && mu <= 0.0 && e > 0.0) return Growth::constant();
    return Growth::unknown();
}

bool FundamentalFunction::V_finite_at_infinity() const { return !is_inf(v_.integrate(1.0, kInf)); }

bool FundamentalFunction::phi_finite_at_infinity() const { return std::isfinite(phi_p(kInf)); }

std::vector<std::pair<double, double>> FundamentalFunction::memo_snapshot() const {
    std::shared_lock lock(memo_->mutex);
    return {memo_->values.begin(), memo_->values.end()};
}

bool FundamentalFunction::memo_is_monotone(double slack) const {
    const auto snap = memo_snapshot();
    for (std::size_t i = 1; i < snap.size(); ++i) {
        const double prev = snap[i - 1].second;
        const double cur = snap[i].second;
        if (prev > cur + slack * cur) return false;
    }
    return true;
}

}  // namespace copson
