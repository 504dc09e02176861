#pragma once

#include <cmath>
#include <random>
#include <string>

#include "copson/weights.hpp"

namespace copson::fixtures {

struct PowerFixture {
    WeightExpr u, v, w;
    double m = 1, p = 1, q = 1;

    std::string describe() const {
        return "u=" + u.to_string() + " v=" + v.to_string() + " w=" + w.to_string() + " (m,p,q)=(" +
               format_number(m) + "," + format_number(p) + "," + format_number(q) + ")";
    }
};

// Power weights u, v and a power w cut to a bounded interval away from 0 and
// infinity, which keeps every condition finite.
inline PowerFixture random_power_fixture(std::mt19937_64& rng, double m, double p, double q) {
    std::uniform_real_distribution<double> uv(-0.5, 1.0);
    std::uniform_real_distribution<double> wd(-0.5, 2.0);
    std::uniform_real_distribution<double> lo(-3.0, 0.0);
    std::uniform_real_distribution<double> hi(0.0, 3.0);
    PowerFixture f;
    f.u = WeightExpr::power_law(1, uv(rng));
    f.v = WeightExpr::power_law(1, uv(rng));
    const double a = std::exp2(lo(rng));
    const double b = std::exp2(hi(rng));
    f.w = WeightExpr::restrict(WeightExpr::power_law(1, wd(rng)), a, b);
    f.m = m;
    f.p = p;
    f.q = q;
    return f;
}

// Exponents at m = 1 drawn inside the requested case (0..3 for I..IV).
inline void random_m1_exponents(std::mt19937_64& rng, int which, double& p, double& q) {
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    switch (which) {
        case 0: q = 1 + 2 * ud(rng); p = 0.3 + (q - 0.3) * ud(rng); break;
        case 1: q = 1 + 1.5 * ud(rng); p = q + 0.2 + 1.8 * ud(rng); break;
        case 2: q = 0.3 + 0.65 * ud(rng); p = 0.2 + (q - 0.2) * ud(rng); break;
        default: q = 0.3 + 0.65 * ud(rng); p = q + 0.2 + 2 * ud(rng); break;
    }
}

}  // namespace copson::fixtures
