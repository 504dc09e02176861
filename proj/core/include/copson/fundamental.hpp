#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "copson/growth.hpp"
#include "copson/weights.hpp"

namespace copson {

enum class LevelKind { PhiP, V };

struct Admissibility {
    enum class Status { Admissible, DegenerateZero, DegenerateInfinite };
    Status status = Status::Admissible;
    double witness = 0.0;  // a t with phi(t) = 0 or inf
    std::string reason;

    bool ok() const { return status == Status::Admissible; }
};

// phi(t) = (int_0^t v(s) U(s,t)^{p/m} ds)^{1/p} for the pair (u, v).
// Copies share the memo of phi^p values; the memo is safe for concurrent use.
class FundamentalFunction {
public:
    FundamentalFunction(WeightExpr u, WeightExpr v, double m, double p, double tol = 1e-10);

    const WeightExpr& u() const { return u_; }
    const WeightExpr& v() const { return v_; }
    double m() const { return m_; }
    double p() const { return p_; }
    double tol() const { return tol_; }

    // phi^p(t); t may be inf.
    double phi_p(double t) const;
    double phi(double t) const;
    // int_0^t v(s) U(s,t)^{p/m - 1} ds.
    double psi(double t) const;
    // Derivative of phi at a continuity point of u.
    double phi_prime(double t) const;
    double V(double t) const;
    double U(double s, double t) const;
    // int_0^t v(s) U(s,t)^e ds for any exponent e > -1.
    double inner(double t, double e) const;
    // int_a^t v(s) U(s,t)^e ds.
    double inner_from(double a, double t, double e) const;

    Admissibility is_admissible(int probe_depth = 8) const;
    // Throws NotAdmissible with the witness on failure.
    void require_admissible(int probe_depth = 8) const;

    // Bisection for value(t) = target on [lo, hi].
    double solve_level(LevelKind kind, double target, double lo, double hi) const;

    // Endpoint classes of t -> int_0^t v U(s,t)^e ds.
    Growth inner_growth(double e, End end) const;
    Growth phi_p_growth(End end) const { return inner_growth(p_ / m_, end); }
    Growth psi_growth(End end) const { return inner_growth(p_ / m_ - 1.0, end); }
    bool V_finite_at_infinity() const;
    bool phi_finite_at_infinity() const;

    std::vector<std::pair<double, double>> memo_snapshot() const;
    // True when memoized phi^p values are nondecreasing up to relative slack.
    bool memo_is_monotone(double slack = 1e-9) const;

private:
    double inner_at_infinity(double e) const;
    std::vector<double> joint_breaks() const;

    struct Memo {
        mutable std::shared_mutex mutex;
        std::map<double, double> values;
    };

    WeightExpr u_;
    WeightExpr v_;
    double m_;
    double p_;
    double tol_;
    std::vector<double> breaks_;
    std::shared_ptr<Memo> memo_;
};

}  // namespace copson
