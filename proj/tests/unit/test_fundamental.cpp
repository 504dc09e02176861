#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/fundamental.hpp"

using namespace copson;

namespace {

const WeightExpr one = WeightExpr::power_law(1, 0);

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(Fundamental, ConstantWeights) {
    const FundamentalFunction F(one, one, 1, 1);
    EXPECT_LE(rel(F.phi(2), 2.0), 1e-10);
    EXPECT_LE(rel(F.phi_prime(3), 3.0), 1e-9);
}

TEST(Fundamental, ExponentialV) {
    const FundamentalFunction F(one, WeightExpr::exponential(1, 1), 1, 1);
    EXPECT_LE(rel(F.phi(1), std::exp(1.0) - 2.0), 1e-10);
    EXPECT_LE(rel(F.phi_prime(1), std::exp(1.0) - 1.0), 1e-9);
}

TEST(Fundamental, DoublySingularPowers) {
    const FundamentalFunction F(WeightExpr::power_law(1, -0.5), WeightExpr::power_law(1, -0.75), 1, 1);
    EXPECT_LE(rel(F.phi(1), 16.0 / 3.0), 1e-10);
    EXPECT_LE(rel(F.phi(16), 16.0 / 3.0 * 8.0), 1e-10);
}

TEST(Fundamental, CubeForPTwo) {
    // phi^2(t) = int_0^t (t - s)^2 ds = t^3 / 3
    const FundamentalFunction F(one, one, 1, 2);
    const double t = 1.7;
    EXPECT_LE(rel(F.phi_p(t), t * t * t / 3), 1e-10);
    EXPECT_LE(rel(F.phi(t), std::sqrt(t * t * t / 3)), 1e-10);
}

TEST(Fundamental, DerivativeMatchesCentredDifference) {
    const WeightExpr us[] = {one, WeightExpr::parse("pow(1,0.5)"), WeightExpr::parse("exp(1,-0.5)")};
    const WeightExpr vs[] = {one, WeightExpr::parse("pow(2,-0.3)"), WeightExpr::parse("exp(1,0.2)")};
    const double mps[][2] = {{1, 1}, {1, 2}, {2, 0.7}, {0.5, 3}};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-2.0, 3.0);
    int n = 0;
    for (const auto& u : us) {
        for (const auto& v : vs) {
            for (const auto& mp : mps) {
                const FundamentalFunction F(u, v, mp[0], mp[1]);
                const double t = n < 9 ? 1.7 : std::exp(d(rng));
                const double h = 1e-5 * t;
                const double fd = (F.phi(t + h) - F.phi(t - h)) / (2 * h);
                EXPECT_LE(rel(F.phi_prime(t), fd), 1e-6) << u.to_string() << " " << v.to_string() << " t=" << t;
                ++n;
            }
        }
    }
}

TEST(Fundamental, Homogeneity) {
    const auto u = WeightExpr::parse("sum(pow(1,-0.3),exp(1,-1))");
    const auto v = WeightExpr::parse("pow(2,0.4)");
    const double lam = 3.5;
    const auto lu = WeightExpr::product(WeightExpr::power_law(lam, 0), u);
    const auto lv = WeightExpr::product(WeightExpr::power_law(lam, 0), v);
    for (double m : {0.5, 1.0, 2.5}) {
        for (double p : {0.7, 1.0, 3.0}) {
            const FundamentalFunction F(u, v, m, p);
            for (double t : {0.01, 1.0, 40.0}) {
                EXPECT_LE(rel(FundamentalFunction(lu, v, m, p).phi(t), std::pow(lam, 1 / m) * F.phi(t)), 1e-8);
                EXPECT_LE(rel(FundamentalFunction(u, lv, m, p).phi(t), std::pow(lam, 1 / p) * F.phi(t)), 1e-8);
            }
        }
    }
}

TEST(Fundamental, MonotoneOnRandomPairs) {
    const FundamentalFunction F(WeightExpr::parse("piecewise([1,2],[1,0,3])"), WeightExpr::parse("exp(1,-0.7)"), 1.5,
                                0.8);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        double a = std::exp(d(rng)), b = std::exp(d(rng));
        if (a > b) std::swap(a, b);
        EXPECT_LE(F.phi(a), F.phi(b) * (1 + 1e-9));
    }
    EXPECT_TRUE(F.memo_is_monotone());
}

TEST(Fundamental, ConcurrentReadsMatchSerial) {
    const FundamentalFunction F(one, WeightExpr::parse("pow(1,0.3)"), 2, 3);
    const FundamentalFunction G(one, WeightExpr::parse("pow(1,0.3)"), 2, 3);
    std::vector<double> ts;
    for (int i = 0; i < 64; ++i) ts.push_back(std::ldexp(1.0 + i % 7, i % 9 - 4));
    std::vector<double> par(ts.size());
    std::vector<std::thread> threads;
    for (int k = 0; k < 4; ++k) {
        threads.emplace_back([&, k] {
            for (std::size_t i = k; i < ts.size(); i += 4) par[i] = F.phi_p(ts[i]);
        });
    }
    for (auto& th : threads) th.join();
    for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(par[i], G.phi_p(ts[i]));
}

TEST(Fundamental, Admissibility) {
    EXPECT_TRUE(FundamentalFunction(one, one, 1, 1).is_admissible().ok());
    const auto zero_u = FundamentalFunction(WeightExpr(), one, 1, 1).is_admissible();
    EXPECT_EQ(zero_u.status, Admissibility::Status::DegenerateZero);
    EXPECT_GT(zero_u.witness, 0.0);
    const auto inf = FundamentalFunction(one, WeightExpr::power_law(1, -2), 1, 1).is_admissible();
    EXPECT_EQ(inf.status, Admissibility::Status::DegenerateInfinite);
    EXPECT_THROW(FundamentalFunction(WeightExpr(), one, 1, 1).require_admissible(), NotAdmissible);
}

TEST(Fundamental, UVanishingNearZeroIsDegenerate) {
    const FundamentalFunction F(WeightExpr::restrict(one, 1, kInf), one, 1, 1);
    const auto a = F.is_admissible();
    EXPECT_EQ(a.status, Admissibility::Status::DegenerateZero);
    EXPECT_LE(a.witness, 1.0);
}

TEST(Fundamental, SolveLevel) {
    const FundamentalFunction F(one, one, 1, 1);
    EXPECT_LE(rel(F.solve_level(LevelKind::PhiP, 2.0, 0.0, 10.0), 2.0), 1e-10);
    EXPECT_LE(rel(F.solve_level(LevelKind::V, 1.0, 0.0, 10.0), 1.0), 1e-12);
    const FundamentalFunction G(one, WeightExpr::exponential(1, 1), 1, 1);
    EXPECT_LE(rel(G.solve_level(LevelKind::V, std::exp(1.0) - 1, 0.0, 10.0), 1.0), 1e-10);
    EXPECT_THROW(F.solve_level(LevelKind::V, 100.0, 0.0, 10.0), TargetNotBracketed);
}

TEST(Fundamental, SolveLevelIsRightInverse) {
    const FundamentalFunction F(WeightExpr::parse("pow(1,-0.4)"), WeightExpr::parse("exp(1,0.3)"), 2, 1.5);
    for (double target : {1e-6, 0.3, 5.0, 400.0}) {
        const double t = F.solve_level(LevelKind::PhiP, target, 0.0, 1e3);
        EXPECT_LE(rel(F.phi_p(t), target), 1e-8);
    }
}

TEST(Fundamental, LimitAtZeroVanishes) {
    const FundamentalFunction F(WeightExpr::parse("pow(1,-0.5)"), WeightExpr::parse("pow(1,-0.75)"), 1, 1);
    EXPECT_LT(F.phi(1e-12), 1e-8);
}

TEST(Fundamental, FiniteAtInfinity) {
    const auto e = WeightExpr::exponential(1, -1);
    EXPECT_TRUE(FundamentalFunction(e, e, 1, 1).phi_finite_at_infinity());
    EXPECT_FALSE(FundamentalFunction(one, one, 1, 1).phi_finite_at_infinity());
    EXPECT_TRUE(FundamentalFunction(one, e, 1, 1).V_finite_at_infinity());
}
