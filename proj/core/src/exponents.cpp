#include "copson/exponents.hpp"

#include <cmath>

#include "copson/errors.hpp"

namespace copson {

std::string to_string(Case c) {
    switch (c) {
        case Case::I:
            return "I";
        case Case::II:
            return "II";
        case Case::III:
            return "III";
        case Case::IV:
            return "IV";
    }
    return "?";
}

std::optional<double> conjugate(double x) {
    if (x == 1.0) return std::nullopt;
    return x / (x - 1.0);
}

Exponents classify(double m, double p, double q) {
    if (!(m > 0.0) || !(p > 0.0) || !(q > 0.0) || !std::isfinite(m) || !std::isfinite(p) ||
        !std::isfinite(q)) {
        throw InvalidArgument("exponents m, p, q must be positive and finite");
    }
    Exponents e;
    e.m = m;
    e.p = p;
    e.q = q;
    if (p != q) e.r = p * q / (p - q);
    e.m_conj = conjugate(m);
    e.p_conj = conjugate(p);
    e.q_conj = conjugate(q);
    if (m <= q) {
        e.regime = p <= q ? Case::I : Case::II;
    } else {
        e.regime = p <= q ? Case::III : Case::IV;
    }
    return e;
}

}  // namespace copson
