#pragma once

#include <string>

namespace copson {

enum class End { Zero, Infinity };

// Leading behaviour t^power * |log t|^log * exp(rate * t) of a nonnegative
// function as t approaches one end of (0, inf). Zero means identically zero
// near that end. rate is only meaningful at infinity.
struct Growth {
    enum class Kind { Zero, Regular, Unknown };
    Kind kind = Kind::Unknown;
    double power = 0.0;
    double log = 0.0;
    double rate = 0.0;

    static Growth zero() { return {Kind::Zero, 0.0, 0.0, 0.0}; }
    static Growth unknown() { return {Kind::Unknown, 0.0, 0.0, 0.0}; }
    static Growth regular(double power, double log = 0.0, double rate = 0.0) {
        return {Kind::Regular, power, log, rate};
    }
    static Growth constant() { return regular(0.0); }

    bool is_zero() const { return kind == Kind::Zero; }
    bool known() const { return kind != Kind::Unknown; }
    std::string describe() const;
};

enum class Trend { Vanishes, Bounded, Diverges, Unknown };

// Exponent comparisons are done with this slack; exponents come out of
// rational arithmetic on user inputs.
inline constexpr double kExponentSlack = 1e-9;

Growth mul(const Growth& a, const Growth& b);
Growth pow(const Growth& a, double e);
// Dominant part of a sum.
Growth add(const Growth& a, const Growth& b, End end);

Trend trend(const Growth& g, End end);
bool integrable(const Growth& g, End end);

// Class of P(t) = int_0^t g as t -> 0 (g integrable at 0).
Growth primitive_near_zero(const Growth& g);
// Class of int_c^t g as t -> inf; constant when g is integrable at infinity.
Growth primitive_near_infinity(const Growth& g);
// Class of int_t^inf g as t -> inf (g integrable at infinity).
Growth tail_near_infinity(const Growth& g);
// Class of int_t^c g as t -> 0; constant when g is integrable at 0.
Growth tail_near_zero(const Growth& g);

}  // namespace copson
