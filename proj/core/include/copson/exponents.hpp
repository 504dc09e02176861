#pragma once

#include <optional>
#include <string>

namespace copson {

// Regimes of the embedding problem: I m<=q, p<=q; II m<=q<p; III p<=q<m;
// IV q<m, q<p.
enum class Case { I, II, III, IV };

std::string to_string(Case c);

struct Exponents {
    double m = 1.0;
    double p = 1.0;
    double q = 1.0;
    std::optional<double> r;  // pq/(p-q) when p != q
    std::optional<double> m_conj;
    std::optional<double> p_conj;
    std::optional<double> q_conj;
    Case regime = Case::I;
};

// Conjugate x/(x-1); empty at x = 1.
std::optional<double> conjugate(double x);

Exponents classify(double m, double p, double q);

}  // namespace copson
