#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "copson/discrete_lemmas.hpp"
#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/hardy.hpp"
#include "copson/oracle.hpp"

using namespace copson;

namespace {

const WeightExpr one = WeightExpr::power_law(1, 0);

OptimizerBudget small_budget(std::uint64_t seed = 0) { return {24, 16, seed, 6}; }

GridOptions window(int h) {
    GridOptions g;
    g.lo_exp = -h;
    g.hi_exp = h;
    g.tol = 1e-9;
    return g;
}

}  // namespace

TEST(Oracle, Norms) {
    const StepFunction chi({1.0}, {1.0});
    EXPECT_NEAR(lambda_norm(WeightExpr::power_law(1, 1), 1, chi), 0.5, 1e-12);
    EXPECT_NEAR(cl_norm(one, one, 1, 1, chi), 0.5, 1e-10);
    EXPECT_EQ(cl_norm(one, one, 1, 1, StepFunction()), 0.0);
    EXPECT_THROW(cl_norm(one, one, 1, 1, StepFunction({1, 2}, {1, 2})), InvalidArgument);
}

TEST(Oracle, FubiniFixtureIsExact) {
    const auto r = empirical_embedding_constant(one, one, WeightExpr::power_law(1, 1), 1, 1, 1, small_budget(),
                                                window(12));
    EXPECT_NEAR(r.C_emp, 1.0, 1e-6);
    EXPECT_TRUE(r.best_f.is_canonical());
    EXPECT_EQ(r.evaluated, 24);
}

TEST(Oracle, ZeroW) {
    EXPECT_EQ(empirical_embedding_constant(one, one, WeightExpr(), 1, 1, 1, small_budget(), window(12)).C_emp, 0.0);
}

TEST(Oracle, NotAdmissibleThrows) {
    EXPECT_THROW(empirical_embedding_constant(WeightExpr(), one, one, 1, 1, 1, small_budget(), window(12)),
                 NotAdmissible);
}

TEST(Oracle, DeterministicForSeed) {
    const auto u = WeightExpr::power_law(1, 0.3);
    const auto w = WeightExpr::parse("restrict(pow(1,0.5),0.5,4)");
    const auto a = empirical_embedding_constant(u, one, w, 2, 3, 0.5, small_budget(7), window(12));
    const auto b = empirical_embedding_constant(u, one, w, 2, 3, 0.5, small_budget(7), window(12));
    EXPECT_EQ(a.C_emp, b.C_emp);
    EXPECT_EQ(a.best_f.to_string(), b.best_f.to_string());
}

TEST(Oracle, MonotoneInBudget) {
    const auto u = WeightExpr::power_law(1, 0.3);
    const auto w = WeightExpr::parse("restrict(pow(1,0.5),0.5,4)");
    double last = 0;
    for (int n : {8, 16, 32}) {
        const OptimizerBudget b{n, 8, 3, 6};
        const double c = empirical_embedding_constant(u, one, w, 1, 3, 2, b, window(12)).C_emp;
        EXPECT_GE(c, last);
        last = c;
    }
    const double more_steps = empirical_embedding_constant(u, one, w, 1, 3, 2, {32, 24, 3, 6}, window(12)).C_emp;
    EXPECT_GE(more_steps, last);
}

TEST(Oracle, DivergenceGrowsWithWindow) {
    const auto probe = divergence_probe(one, one, one, 1, 1, 1, small_budget(), {4, 8, 12});
    EXPECT_TRUE(probe.grows);
    EXPECT_GT(probe.C_emp.back(), 1e3);
}

TEST(Oracle, FiniteFixtureDoesNotGrow) {
    const auto probe = divergence_probe(one, one, WeightExpr::power_law(1, 1), 1, 1, 1, small_budget(), {4, 8, 12});
    EXPECT_FALSE(probe.grows);
}

TEST(Oracle, RescaleIdentityAtMOne) {
    const auto w = WeightExpr::parse("restrict(pow(1,0.5),0.5,4)");
    const auto r = rescale_equivalence_check(one, one, w, 1, 2, 3, small_budget(), window(12));
    EXPECT_EQ(r.C_emp, r.C_rescaled);
    EXPECT_EQ(r.relative_gap, 0.0);
}

TEST(Hardy, ConditionFixtures) {
    HardyProblem hp{0, 1, one, one, 1};
    EXPECT_NEAR(hardy_condition(hp), 1.0, 1e-9);
    hp.q = 0.5;
    EXPECT_NEAR(hardy_condition(hp), 0.5, 1e-6);
}

TEST(Hardy, HomogeneityInEta) {
    HardyProblem hp{0, 2, WeightExpr::power_law(1, 0.5), WeightExpr::power_law(1, 0.3), 1.5};
    const double c = hardy_condition(hp);
    hp.eta = WeightExpr::product(WeightExpr::power_law(4, 0), hp.eta);
    EXPECT_NEAR(hardy_condition(hp), c / 4, 1e-9 * c);
}

TEST(Hardy, SaturatorQOne) {
    const HardyProblem hp{0, 1, one, one, 1};
    const auto s = hardy_saturator(hp, 64);
    EXPECT_NEAR(hardy_mass(hp, s.g), 1.0, 1e-12);
    EXPECT_GE(s.ratio, 0.9);
}

TEST(Hardy, SaturatorQHalf) {
    const HardyProblem hp{0, 1, one, one, 0.5};
    const auto s = hardy_saturator(hp, 64);
    EXPECT_NEAR(hardy_mass(hp, s.g), 1.0, 1e-12);
    EXPECT_GE(s.ratio, 0.5);
}

TEST(Hardy, InfiniteConditionThrows) {
    const HardyProblem hp{0, kInf, one, one, 1};
    EXPECT_THROW(hardy_saturator(hp, 16), ConditionInfinite);
}

TEST(Hardy, TwoSided) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ud(0, 1);
    const double kappa_H = 4;
    for (double q : {0.5, 2.0}) {
        for (int i = 0; i < 5; ++i) {
            const double alpha = -0.5 + 1.5 * ud(rng);
            const double beta = -0.5 + ((alpha + 1) / q + 0.5) * ud(rng);
            const HardyProblem hp{0, 1 + 3 * ud(rng), WeightExpr::power_law(1, alpha), WeightExpr::power_law(1, beta),
                                  q};
            const double c = hardy_condition(hp);
            ASSERT_TRUE(std::isfinite(c) && c > 0);
            double best = 0;
            for (int j = 0; j < 50; ++j) {
                std::vector<double> knots, values;
                for (int k = 0; k < 4; ++k) knots.push_back(hp.b * ud(rng));
                std::sort(knots.begin(), knots.end());
                for (int k = 0; k < 4; ++k) values.push_back(ud(rng));
                const StepFunction h(knots, values);
                best = std::max(best, hardy_lhs(hp, h) / hardy_mass(hp, h));
            }
            EXPECT_LE(best, kappa_H * c) << "q=" << q;
            EXPECT_GE(hardy_saturator(hp, 64).ratio, 1 / kappa_H) << "q=" << q;
        }
    }
}

TEST(DiscreteLemmas, HandArithmetic) {
    EXPECT_NEAR(discrete_lemma_constant({1, 2, 4}, {1, 1, 1}, 1, LemmaVariant::P20Sum), 11.0 / 7, 1e-14);
}

TEST(DiscreteLemmas, SingleMassSupVariants) {
    for (auto v : {LemmaVariant::P20SupSup, LemmaVariant::P21SupSup}) {
        const std::vector<double> b = v == LemmaVariant::P20SupSup ? std::vector<double>{1, 3, 9}
                                                                   : std::vector<double>{9, 3, 1};
        EXPECT_NEAR(discrete_lemma_constant(b, {0, 2, 0}, 1.5, v), 1.0, 1e-14) << to_string(v);
    }
}

TEST(DiscreteLemmas, ParseAndGeometry) {
    EXPECT_EQ(parse_variant("P20sum"), LemmaVariant::P20Sum);
    EXPECT_EQ(parse_variant("P21sup-inner"), LemmaVariant::P21SupInner);
    EXPECT_EQ(parse_variant("P21supsup"), LemmaVariant::P21SupSup);
    EXPECT_THROW(parse_variant("P22sum"), InvalidArgument);
    EXPECT_NEAR(geometric_ratio({1, 3, 10}, LemmaVariant::P20Sum), 3.0, 1e-15);
    EXPECT_THROW(geometric_ratio({1, 1, 2}, LemmaVariant::P20Sum), NotGeometric);
    EXPECT_THROW(geometric_ratio({1, 2, 4}, LemmaVariant::P21Sum), NotGeometric);
}

TEST(DiscreteLemmas, BoundedByFourForTenfoldGrowth) {
    std::mt19937_64 rng(23);
    std::exponential_distribution<double> ed(1.0);
    std::vector<double> b;
    for (int k = 0; k < 12; ++k) b.push_back(std::pow(10.0, k));
    for (int i = 0; i < 100; ++i) {
        std::vector<double> c;
        for (int k = 0; k < 12; ++k) c.push_back(ed(rng));
        EXPECT_LE(discrete_lemma_constant(b, c, 2, LemmaVariant::P20Sum), 4.0);
    }
}

TEST(DiscreteLemmas, HolderSaturator) {
    const auto c = holder_saturator({1, 1}, 2, 1);
    EXPECT_NEAR(c[0], 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(c[0] + c[1], std::sqrt(2.0), 1e-15);
    const auto d = holder_saturator({1, 0}, 2, 1);
    EXPECT_EQ(d[0], 1.0);
    EXPECT_EQ(d[1], 0.0);
    EXPECT_THROW(holder_saturator({0, 0}, 2, 1), DegenerateB);
}

TEST(DiscreteLemmas, HolderInequalityAndEquality) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ud(0, 1);
    for (int i = 0; i < 1000; ++i) {
        const double p = 0.2 + 4 * ud(rng);
        const double q = p * (0.05 + 0.9 * ud(rng));
        std::vector<double> a(6), b(6);
        for (int k = 0; k < 6; ++k) {
            a[k] = ud(rng);
            b[k] = ud(rng);
        }
        double lhs = 0, ap = 0, bb = 0;
        for (int k = 0; k < 6; ++k) {
            lhs += std::pow(a[k], q) * b[k];
            ap += std::pow(a[k], p);
            bb += std::pow(b[k], p / (p - q));
        }
        const double rhs = std::pow(ap, 1 / p) * std::pow(bb, (p - q) / (p * q));
        EXPECT_LE(std::pow(lhs, 1 / q), rhs * (1 + 1e-12));

        const auto c = holder_saturator(b, p, q);
        double cp = 0, cq = 0;
        for (int k = 0; k < 6; ++k) {
            cp += std::pow(c[k], p);
            cq += std::pow(c[k], q) * b[k];
        }
        EXPECT_NEAR(cp, 1.0, 1e-14);
        const double target = std::pow(bb, (p - q) / (p * q));
        EXPECT_LE(std::abs(std::pow(cq, 1 / q) - target), 1e-12 * target);
    }
}
