#pragma once

#include <cmath>
#include <limits>

// Extended nonnegative reals with the conventions 1/inf = 0, 0*inf = 0, 0^0 = 1.
namespace copson {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double x) { return std::isinf(x) && x > 0; }

inline double ext_mul(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

inline double ext_pow(double x, double e) {
    if (e == 0.0) return 1.0;
    if (x == 0.0) return e > 0 ? 0.0 : kInf;
    if (is_inf(x)) return e > 0 ? kInf : 0.0;
    return std::pow(x, e);
}

// a / b under the same conventions; 0/0 and inf/inf collapse to 0 via 0*inf.
inline double ext_div(double a, double b) { return ext_mul(a, ext_pow(b, -1.0)); }

}  // namespace copson
