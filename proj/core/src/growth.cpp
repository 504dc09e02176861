#include "copson/growth.hpp"

#include <cmath>
#include <sstream>

namespace copson {

namespace {

int sign(double x) {
    if (x > kExponentSlack) return 1;
    if (x < -kExponentSlack) return -1;
    return 0;
}

}  // namespace

std::string Growth::describe() const {
    switch (kind) {
        case Kind::Zero:
            return "zero";
        case Kind::Unknown:
            return "unknown";
        case Kind::Regular:
            break;
    }
    std::ostringstream os;
    os << "t^" << power;
    if (log != 0.0) os << " log^" << log;
    if (rate != 0.0) os << " exp(" << rate << " t)";
    return os.str();
}

Growth mul(const Growth& a, const Growth& b) {
    if (a.is_zero() || b.is_zero()) return Growth::zero();
    if (!a.known() || !b.known()) return Growth::unknown();
    return Growth::regular(a.power + b.power, a.log + b.log, a.rate + b.rate);
}

Growth pow(const Growth& a, double e) {
    if (e == 0.0) return Growth::constant();
    if (a.is_zero()) return e > 0 ? Growth::zero() : Growth::unknown();
    if (!a.known()) return Growth::unknown();
    return Growth::regular(a.power * e, a.log * e, a.rate * e);
}

Growth add(const Growth& a, const Growth& b, End end) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!a.known() || !b.known()) return Growth::unknown();
    if (end == End::Infinity) {
        if (int s = sign(a.rate - b.rate)) return s > 0 ? a : b;
        if (int s = sign(a.power - b.power)) return s > 0 ? a : b;
        return sign(a.log - b.log) >= 0 ? a : b;
    }
    if (int s = sign(a.power - b.power)) return s < 0 ? a : b;
    return sign(a.log - b.log) >= 0 ? a : b;
}

Trend trend(const Growth& g, End end) {
    if (g.is_zero()) return Trend::Vanishes;
    if (!g.known()) return Trend::Unknown;
    int s = 0;
    if (end == End::Infinity) {
        s = sign(g.rate);
        if (s == 0) s = sign(g.power);
    } else {
        s = -sign(g.power);
    }
    if (s == 0) s = sign(g.log);
    if (s > 0) return Trend::Diverges;
    if (s < 0) return Trend::Vanishes;
    return Trend::Bounded;
}

bool integrable(const Growth& g, End end) {
    if (g.is_zero()) return true;
    if (!g.known()) return false;
    if (end == End::Infinity) {
        if (int s = sign(g.rate)) return s < 0;
        if (int s = sign(g.power + 1.0)) return s < 0;
        return g.log < -1.0 - kExponentSlack;
    }
    if (int s = sign(g.power + 1.0)) return s > 0;
    return g.log < -1.0 - kExponentSlack;
}

Growth primitive_near_zero(const Growth& g) {
    if (g.is_zero()) return Growth::zero();
    if (!g.known() || !integrable(g, End::Zero)) return Growth::unknown();
    if (sign(g.power + 1.0) == 0) return Growth::regular(0.0, g.log + 1.0);
    return Growth::regular(g.power + 1.0, g.log);
}

Growth primitive_near_infinity(const Growth& g) {
    if (g.is_zero()) return Growth::constant();
    if (!g.known()) return Growth::unknown();
    if (integrable(g, End::Infinity)) return Growth::constant();
    if (sign(g.rate) > 0) return g;
    if (sign(g.power + 1.0) == 0) return Growth::regular(0.0, g.log + 1.0);
    return Growth::regular(g.power + 1.0, g.log);
}

Growth tail_near_infinity(const Growth& g) {
    if (g.is_zero()) return Growth::zero();
    if (!g.known() || !integrable(g, End::Infinity)) return Growth::unknown();
    if (sign(g.rate) < 0) return g;
    if (sign(g.power + 1.0) == 0) return Growth::regular(0.0, g.log + 1.0);
    return Growth::regular(g.power + 1.0, g.log);
}

Growth tail_near_zero(const Growth& g) {
    if (g.is_zero()) return Growth::constant();
    if (!g.known()) return Growth::unknown();
    if (integrable(g, End::Zero)) return Growth::constant();
    if (sign(g.power + 1.0) == 0) return Growth::regular(0.0, g.log + 1.0);
    return Growth::regular(g.power + 1.0, g.log);
}

}  // namespace copson
