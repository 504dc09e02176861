#pragma once

#include <map>
#include <string>

#include "copson/exponents.hpp"
#include "copson/profile.hpp"

namespace copson {

// Conditions A1..A6 for m = 1, written with q' = q/(q-1) and r = pq/(p-q).
// They duplicate A7..A12 at m = 1 on purpose and serve as a cross-check.
struct M1Report {
    Case regime = Case::I;
    std::map<std::string, double> conditions;
    double C_estimate = 0.0;
    bool numeric_endpoints = false;
};

Evaluated condition_A1(const Profile& P, double p, double q);
Evaluated condition_A2(const Profile& P, double p, double q);
Evaluated condition_A3(const Profile& P, double p, double q);
Evaluated condition_A4(const Profile& P, double p, double q);
Evaluated condition_A5(const Profile& P, double p, double q);
Evaluated condition_A6(const Profile& P, double p, double q);

// P must be built with m = 1 (and with psi when q < 1).
M1Report m1_conditions(const Profile& P, double q);

}  // namespace copson
