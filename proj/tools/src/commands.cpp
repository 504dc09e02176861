#include "copson_cli/commands.hpp"

#include <cmath>
#include <random>

#include "copson/associated.hpp"
#include "copson/conditions.hpp"
#include "copson/conditions_m1.hpp"
#include "copson/discretization.hpp"
#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/fundamental.hpp"
#include "copson/json_io.hpp"
#include "copson/oracle.hpp"

namespace copson::cli {

using nlohmann::json;

namespace {

FundamentalFunction fundamental(const ProblemSpec& s) {
    return FundamentalFunction(s.u, s.v, s.m, s.p, s.grid.tol);
}

double need_q(const ProblemSpec& s) {
    if (!s.q) throw InvalidArgument("this command needs q in the problem file");
    return *s.q;
}

const StepFunction& need_g(const ProblemSpec& s) {
    if (!s.g) throw InvalidArgument("this command needs g in the problem file");
    return *s.g;
}

CommandResult with_spec(const ProblemSpec& s, json body, int code = kExitOk) {
    body["problem"] = s.to_json();
    return {code, std::move(body)};
}

double relative_gap(double a, double b) {
    if (a == b) return 0.0;
    if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

struct Checks {
    json list = json::array();
    bool all = true;
    void add(const std::string& name, bool passed, json detail) {
        all = all && passed;
        list.push_back({{"name", name}, {"passed", passed}, {"detail", std::move(detail)}});
    }
};

}  // namespace

CommandResult cmd_admissible(const ProblemSpec& spec) {
    const Admissibility a = fundamental(spec).is_admissible();
    return with_spec(spec, to_json(a), a.ok() ? kExitOk : kExitNegative);
}

CommandResult cmd_phi(const ProblemSpec& spec) {
    const FundamentalFunction F = fundamental(spec);
    json j{{"t", spec.t}, {"phi", number_or_inf(F.phi(spec.t))}, {"phi_p", number_or_inf(F.phi_p(spec.t))}};
    try {
        j["phi_prime"] = number_or_inf(F.phi_prime(spec.t));
    } catch (const DegenerateAtPoint& e) {
        j["phi_prime"] = nullptr;
        j["phi_prime_error"] = e.what();
    }
    return with_spec(spec, j);
}

CommandResult cmd_discretize(const ProblemSpec& spec) {
    const FundamentalFunction F = fundamental(spec);
    const DiscretizingSequence seq = build_sequence(F, spec.depth);
    json j = to_json(seq);
    j["residuals"] = to_json(verify_sequence(seq, F));
    if (spec.g && seq.K == KKind::Infinite && rearrange(*spec.g).support_end() > seq.at(seq.kmax)) {
        j["warning"] = "support of g extends beyond t_kmax; raise depth";
    }
    return with_spec(spec, j);
}

CommandResult cmd_embed(const ProblemSpec& spec, const CommandOptions& opts) {
    const double q = need_q(spec);
    const ConditionReport r = embedding_constant(spec.u, spec.v, spec.w, spec.m, spec.p, q, spec.grid);
    json j = to_json(r);
    if (opts.oracle) {
        const EmpiricalResult e =
            empirical_embedding_constant(spec.u, spec.v, spec.w, spec.m, spec.p, q, spec.budget, spec.grid);
        json o = to_json(e);
        o["ratio"] = number_or_inf(ext_div(r.C_estimate, e.C_emp));
        j["oracle"] = o;
    }
    return with_spec(spec, j, r.embedding_holds ? kExitOk : kExitNegative);
}

CommandResult cmd_assoc(const ProblemSpec& spec) {
    const AssociatedReport r = associated_report(spec.u, spec.v, spec.m, spec.p, need_g(spec), spec.grid);
    return with_spec(spec, to_json(r));
}

CommandResult cmd_verify(const ProblemSpec& spec) {
    Checks c;
    const FundamentalFunction F = fundamental(spec);
    const Admissibility adm = F.is_admissible();
    c.add("admissible", adm.ok(), to_json(adm));
    if (!adm.ok()) return with_spec(spec, {{"checks", c.list}, {"all_passed", false}}, kExitNegative);

    const double t = spec.t;
    const double phi = F.phi(t);
    const double lam = 2.0;
    const FundamentalFunction Fu(WeightExpr::product(WeightExpr::power_law(lam, 0.0), spec.u), spec.v,
                                 spec.m, spec.p, spec.grid.tol);
    const FundamentalFunction Fv(spec.u, WeightExpr::product(WeightExpr::power_law(lam, 0.0), spec.v),
                                 spec.m, spec.p, spec.grid.tol);
    const double gu = relative_gap(Fu.phi(t), std::pow(lam, 1.0 / spec.m) * phi);
    const double gv = relative_gap(Fv.phi(t), std::pow(lam, 1.0 / spec.p) * phi);
    c.add("phi scales as lambda^{1/m} under u -> lambda u", gu <= 1e-8, {{"relative_gap", gu}});
    c.add("phi scales as lambda^{1/p} under v -> lambda v", gv <= 1e-8, {{"relative_gap", gv}});

    const double h = 1e-5 * t;
    const double fd = (F.phi(t + h) - F.phi(t - h)) / (2.0 * h);
    try {
        const double gd = relative_gap(F.phi_prime(t), fd);
        c.add("phi' matches a centred difference", gd <= 1e-5, {{"relative_gap", gd}});
    } catch (const DegenerateAtPoint& e) {
        c.add("phi' matches a centred difference", true, {{"skipped", e.what()}});
    }

    const DiscretizingSequence seq = build_sequence(F, spec.depth);
    const SequenceResiduals res = verify_sequence(seq, F);
    c.add("discretizing sequence identities", res.max() <= 1e-6, to_json(res));
    c.add("phi nondecreasing on evaluated points", F.memo_is_monotone(), json::object());

    if (seq.kmax - seq.kmin >= 3) {
        std::mt19937_64 rng(spec.budget.seed);
        std::uniform_int_distribution<int> kd(seq.kmin + 3, seq.kmax);
        std::uniform_real_distribution<double> ud(0.0, 1.0);
        int violations = 0;
        for (int i = 0; i < 20; ++i) {
            const int k = kd(rng);
            const double lo = seq.at(k - 1);
            const double hi = seq.at(k);
            const double x = is_inf(hi) ? lo * (1.0 + 4.0 * ud(rng)) : lo + (hi - lo) * ud(rng);
            const CoveringEstimate e = covering_estimates(seq, F, k, x);
            const double slack = 1e-9;
            if (e.v_lhs > e.v_rhs * (1.0 + slack) || e.phi_lhs > e.phi_rhs * (1.0 + slack)) ++violations;
        }
        c.add("covering estimates on 20 random (k, t)", violations == 0, {{"violations", violations}});
    }

    if (spec.q) {
        const double q = *spec.q;
        const ConditionReport r = embedding_constant(spec.u, spec.v, spec.w, spec.m, spec.p, q, spec.grid);
        const ConditionReport rl = embedding_constant(
            spec.u, spec.v, WeightExpr::product(WeightExpr::power_law(lam, 0.0), spec.w), spec.m, spec.p, q,
            spec.grid);
        const double gw = relative_gap(rl.C_estimate, std::pow(lam, 1.0 / q) * r.C_estimate);
        c.add("conditions scale as lambda^{1/q} under w -> lambda w",
              (is_inf(r.C_estimate) && is_inf(rl.C_estimate)) || gw <= 1e-6, {{"relative_gap", number_or_inf(gw)}});
        if (spec.m == 1.0) {
            const Exponents e = classify(1.0, spec.p, q);
            const Profile P = make_profile(spec.u, spec.v, spec.w, e, spec.grid);
            const ConditionReport general = conditions_from_profile(P, e);
            const M1Report special = m1_conditions(P, q);
            const double g = relative_gap(general.C_estimate, special.C_estimate);
            c.add("general and m = 1 conditions agree", (is_inf(general.C_estimate) && is_inf(special.C_estimate)) || g <= 1e-9,
                  {{"general", number_or_inf(general.C_estimate)}, {"m1", number_or_inf(special.C_estimate)}});
        }
    }

    if (spec.g) {
        const double a = associated_norm(spec.u, spec.v, spec.m, spec.p, *spec.g, spec.grid);
        const double a3 = associated_norm(spec.u, spec.v, spec.m, spec.p, spec.g->scaled(3.0), spec.grid);
        const double ga = relative_gap(a3, 3.0 * a);
        c.add("associated norm is homogeneous", (is_inf(a) && is_inf(a3)) || ga <= 1e-9,
              {{"relative_gap", number_or_inf(ga)}});
    }
    return with_spec(spec, {{"checks", c.list}, {"all_passed", c.all}}, c.all ? kExitOk : kExitNegative);
}

CommandResult run_command(const std::string& name, const ProblemSpec& spec, const CommandOptions& opts) {
    try {
        if (name == "admissible") return cmd_admissible(spec);
        if (name == "phi") return cmd_phi(spec);
        if (name == "discretize") return cmd_discretize(spec);
        if (name == "embed") return cmd_embed(spec, opts);
        if (name == "assoc") return cmd_assoc(spec);
        if (name == "verify") return cmd_verify(spec);
        return {kExitInput, {{"error", "unknown command '" + name + "'"}}};
    } catch (const NotAdmissible& e) {
        return with_spec(spec,
                         {{"error", e.what()}, {"admissible", false}, {"witness", number_or_inf(e.witness())}},
                         kExitNegative);
    } catch (const ParseError& e) {
        return {kExitInput, {{"error", e.what()}}};
    } catch (const InvalidArgument& e) {
        return {kExitInput, {{"error", e.what()}}};
    } catch (const NonIntegrableNearZero& e) {
        return with_spec(spec, {{"error", e.what()}}, kExitNegative);
    } catch (const Error& e) {
        return with_spec(spec, {{"error", e.what()}}, kExitNegative);
    }
}

}  // namespace copson::cli
