#include "copson/json_io.hpp"

#include "copson/errors.hpp"
#include "copson/extended.hpp"

namespace copson {

using nlohmann::json;

json number_or_inf(double x) {
    if (is_inf(x)) return "inf";
    return x;
}

double number_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return kInf;
    if (j.is_number()) return j.get<double>();
    throw InvalidArgument("expected a number or \"inf\"");
}

json to_json(const Admissibility& a) {
    json j;
    j["admissible"] = a.ok();
    if (a.ok()) {
        j["witness"] = nullptr;
    } else {
        j["witness"] = number_or_inf(a.witness);
        j["status"] = a.status == Admissibility::Status::DegenerateZero ? "degenerate_zero"
                                                                        : "degenerate_infinite";
        j["reason"] = a.reason;
    }
    return j;
}

json to_json(const Exponents& e) {
    json j{{"m", e.m}, {"p", e.p}, {"q", e.q}, {"case", to_string(e.regime)}};
    auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
    j["r"] = opt(e.r);
    j["m_conj"] = opt(e.m_conj);
    j["p_conj"] = opt(e.p_conj);
    j["q_conj"] = opt(e.q_conj);
    return j;
}

json to_json(const ConditionReport& r) {
    json conditions = json::object();
    for (const auto& [name, value] : r.conditions) conditions[name] = number_or_inf(value);
    return {{"case", to_string(r.exponents.regime)},
            {"exponents", to_json(r.exponents)},
            {"conditions", conditions},
            {"C_estimate", number_or_inf(r.C_estimate)},
            {"embedding_holds", r.embedding_holds},
            {"numeric_endpoints", r.numeric_endpoints}};
}

json to_json(const DiscretizingSequence& s) {
    json points = json::array();
    for (int k = s.kmin; k <= s.kmax; ++k) {
        points.push_back({{"k", k},
                          {"t_k", number_or_inf(s.at(k))},
                          {"label", s.label(k) == Label::InK1 ? "K1" : "K2"}});
    }
    json j{{"K", s.K == KKind::Zero ? "zero" : "infinite"},
           {"kmin", s.kmin},
           {"kmax", s.kmax},
           {"ratio", s.ratio},
           {"sequence", points}};
    if (s.t0_is_infinity) j["t0"] = "inf";
    return j;
}

json to_json(const SequenceResiduals& r) {
    return {{"V_growth", r.v_growth},
            {"phi_growth", r.phi_growth},
            {"V_equality", r.v_equality},
            {"phi_equality", r.phi_equality},
            {"max", r.max()}};
}

json to_json(const AssociatedReport& r) {
    json terms = json::object();
    for (const auto& [name, value] : r.terms) terms[name] = number_or_inf(value);
    return {{"quadrant", to_string(r.quadrant)},
            {"norm", number_or_inf(r.norm)},
            {"terms", terms},
            {"numeric_endpoints", r.numeric_endpoints}};
}

json to_json(const GridOptions& g) {
    return {{"lo_exp", g.lo_exp}, {"hi_exp", g.hi_exp}, {"points_per_octave", g.points_per_octave},
            {"tol", g.tol}};
}

json to_json(const OptimizerBudget& b) {
    return {{"candidates", b.candidates},
            {"local_steps", b.local_steps},
            {"seed", b.seed},
            {"knot_count", b.knot_count}};
}

json to_json(const EmpiricalResult& r) {
    return {{"C_emp", number_or_inf(r.C_emp)},
            {"best_f", r.best_f.to_string()},
            {"evaluated", r.evaluated},
            {"degenerate", r.degenerate}};
}

}  // namespace copson
