#pragma once

#include <map>
#include <string>

#include "copson/exponents.hpp"
#include "copson/profile.hpp"
#include "copson/weights.hpp"

namespace copson {

struct ConditionReport {
    Exponents exponents;
    std::map<std::string, double> conditions;
    double C_estimate = 0.0;
    bool embedding_holds = false;
    // Some endpoint behaviour was read off the window edge instead of the
    // symbolic classes.
    bool numeric_endpoints = false;
};

struct CaseIIIValues {
    Evaluated A9;
    Evaluated A10;
    Evaluated A11;
};

// Profile of (u, v, w) for the exponents; checks admissibility.
Profile make_profile(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                     const Exponents& e, const GridOptions& grid = {});
bool needs_psi(Case c);

Evaluated condition_A7(const Profile& P, const Exponents& e);
Evaluated condition_A8(const Profile& P, const Exponents& e);
CaseIIIValues condition_A9_A10_A11(const Profile& P, const Exponents& e);
Evaluated condition_A11(const Profile& P, const Exponents& e);
Evaluated condition_A12(const Profile& P, const Exponents& e);

// Weight-level entry points; throw InvalidArgument when e is in another case.
double condition_A7(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                    const Exponents& e, const GridOptions& grid = {});
double condition_A8(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                    const Exponents& e, const GridOptions& grid = {});
CaseIIIValues condition_A9_A10_A11(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                                   const Exponents& e, const GridOptions& grid = {});
double condition_A12(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                     const Exponents& e, const GridOptions& grid = {});

ConditionReport conditions_from_profile(const Profile& P, const Exponents& e);
ConditionReport embedding_constant(const WeightExpr& u, const WeightExpr& v, const WeightExpr& w,
                                   double m, double p, double q, const GridOptions& grid = {});

}  // namespace copson
