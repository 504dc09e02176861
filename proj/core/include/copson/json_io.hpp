#pragma once

#include <nlohmann/json.hpp>

#include "copson/associated.hpp"
#include "copson/conditions.hpp"
#include "copson/discretization.hpp"
#include "copson/fundamental.hpp"
#include "copson/oracle.hpp"

namespace copson {

// Infinite values are written as the string "inf".
nlohmann::json number_or_inf(double x);
double number_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Admissibility& a);
nlohmann::json to_json(const Exponents& e);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const DiscretizingSequence& s);
nlohmann::json to_json(const SequenceResiduals& r);
nlohmann::json to_json(const AssociatedReport& r);
nlohmann::json to_json(const GridOptions& g);
nlohmann::json to_json(const OptimizerBudget& b);
nlohmann::json to_json(const EmpiricalResult& r);

}  // namespace copson
