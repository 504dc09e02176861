#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "copson/associated.hpp"
#include "copson/conditions.hpp"
#include "copson/errors.hpp"
#include "copson/extended.hpp"
#include "copson/oracle.hpp"

using namespace copson;

namespace {

const WeightExpr one = WeightExpr::power_law(1, 0);
const WeightExpr u_fix = WeightExpr::power_law(1, -0.5);
const WeightExpr v_fix = WeightExpr::power_law(1, -0.75);

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

StepFunction random_canonical(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> kd(-4.0, 4.0);
    std::exponential_distribution<double> vd(1.0);
    std::vector<double> knots, values;
    for (int i = 0; i < n; ++i) {
        knots.push_back(std::exp2(kd(rng)));
        values.push_back(vd(rng));
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    values.resize(knots.size());
    std::sort(values.rbegin(), values.rend());
    return StepFunction(knots, values);
}

struct QuadrantFixture {
    double m, p;
};
const QuadrantFixture quadrants[] = {{1, 1}, {0.7, 2}, {2, 0.8}, {2, 3}};

}  // namespace

TEST(StepFunctions, RearrangeSortsLevels) {
    const auto g = rearrange(StepFunction({1, 2, 3}, {1, 3, 2}));
    EXPECT_EQ(g.knots(), (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(g.values(), (std::vector<double>{3, 2, 1}));
    const auto h = rearrange(StepFunction({0.5, 1.5}, {-2, 1}));
    EXPECT_EQ(h.knots(), (std::vector<double>{0.5, 1.5}));
    EXPECT_EQ(h.values(), (std::vector<double>{2, 1}));
}

TEST(StepFunctions, RearrangeIsIdempotent) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const auto g = random_canonical(rng, 6);
        const auto r = rearrange(g);
        EXPECT_EQ(rearrange(r).values(), r.values());
        EXPECT_NEAR(r.integral(), g.integral(), 1e-12 * g.integral());
    }
}

TEST(StepFunctions, RunningAverage) {
    const StepFunction chi({1.0}, {1.0});
    EXPECT_DOUBLE_EQ(running_average(chi, 2), 0.5);
    EXPECT_DOUBLE_EQ(running_average(chi, 0.5), 1.0);
    const StepFunction c({3.0}, {2.5});
    for (double t : {0.1, 1.0, 3.0}) EXPECT_DOUBLE_EQ(running_average(c, t), 2.5);
}

TEST(StepFunctions, ParseLiteral) {
    const auto g = StepFunction::parse("step([1,2.5],[3,1])");
    EXPECT_EQ(g.knots(), (std::vector<double>{1, 2.5}));
    EXPECT_EQ(StepFunction::parse(g.to_string()).values(), g.values());
    EXPECT_THROW(StepFunction::parse("step([2,1],[1,1])"), ParseError);
    EXPECT_THROW(StepFunction::parse("step([1],[1,2])"), ParseError);
}

TEST(Associated, Quadrants) {
    EXPECT_EQ(quadrant(1, 1), Quadrant::i);
    EXPECT_EQ(quadrant(0.5, 2), Quadrant::ii);
    EXPECT_EQ(quadrant(1, 2), Quadrant::ii);
    EXPECT_EQ(quadrant(2, 1), Quadrant::iii);
    EXPECT_EQ(quadrant(2, 3), Quadrant::iv);
}

TEST(Associated, ThreeSixteenths) {
    EXPECT_NEAR(associated_norm(u_fix, v_fix, 1, 1, StepFunction({1.0}, {1.0})), 0.1875, 1e-4);
}

TEST(Associated, ConstantWeightsDiverge) {
    EXPECT_TRUE(is_inf(associated_norm(one, one, 1, 1, StepFunction({1.0}, {1.0}))));
}

TEST(Associated, ZeroFunction) {
    for (const auto& q : quadrants) EXPECT_EQ(associated_norm(u_fix, v_fix, q.m, q.p, StepFunction()), 0.0);
}

TEST(Associated, NotAdmissibleThrows) {
    EXPECT_THROW(associated_norm(WeightExpr(), one, 1, 1, StepFunction({1.0}, {1.0})), NotAdmissible);
}

TEST(Associated, RearrangementInvariance) {
    const StepFunction g({1, 2, 3}, {1, 3, 2});
    const StepFunction h({1, 2, 3}, {2, 1, 3});
    for (const auto& q : quadrants) {
        EXPECT_EQ(associated_norm(u_fix, v_fix, q.m, q.p, g), associated_norm(u_fix, v_fix, q.m, q.p, h));
    }
}

TEST(Associated, Homogeneity) {
    std::mt19937_64 rng(3);
    const auto g = random_canonical(rng, 5);
    for (const auto& q : quadrants) {
        const double a = associated_norm(u_fix, v_fix, q.m, q.p, g);
        EXPECT_LE(rel(associated_norm(u_fix, v_fix, q.m, q.p, g.scaled(2.5)), 2.5 * a), 1e-9);
    }
}

TEST(Associated, Monotone) {
    std::mt19937_64 rng(4);
    for (const auto& q : quadrants) {
        const auto g = random_canonical(rng, 4);
        std::vector<double> bigger = g.values();
        for (auto& x : bigger) x *= 1.3;
        const StepFunction h(g.knots(), bigger);
        EXPECT_LE(associated_norm(u_fix, v_fix, q.m, q.p, g), associated_norm(u_fix, v_fix, q.m, q.p, h) + 1e-8);
    }
}

TEST(Associated, ReportTermsPerQuadrant) {
    const StepFunction g({1.0, 2.0}, {2.0, 1.0});
    EXPECT_EQ(associated_report(u_fix, v_fix, 1, 1, g).terms.size(), 1u);
    EXPECT_EQ(associated_report(u_fix, v_fix, 0.7, 2, g).terms.size(), 1u);
    EXPECT_EQ(associated_report(u_fix, v_fix, 2, 0.8, g).terms.size(), 3u);
    EXPECT_EQ(associated_report(u_fix, v_fix, 2, 3, g).terms.size(), 2u);
}

// Same object reached through the embedding into Lambda^1(g*).
TEST(Associated, DualityWithEmbeddingConstant) {
    const StepFunction g({1.0}, {1.0});
    const double a = associated_norm(u_fix, v_fix, 1, 1, g);
    const double c = embedding_constant(u_fix, v_fix, g.as_weight(), 1, 1, 1).C_estimate;
    EXPECT_GE(a / c, 0.5);
    EXPECT_LE(a / c, 2.0);
}

TEST(Associated, HolderLowerBound) {
    std::mt19937_64 rng(5);
    const double kappa = 50;
    for (const auto& q : quadrants) {
        for (int i = 0; i < 5; ++i) {
            const auto f = random_canonical(rng, 4);
            const auto g = random_canonical(rng, 4);
            double pairing = 0;
            const auto fw = f.as_weight();
            for (std::size_t k = 0; k < g.pieces(); ++k) pairing += g.values()[k] * fw.integrate(g.left(k), g.right(k));
            const double bound = cl_norm(u_fix, v_fix, q.m, q.p, f) * associated_norm(u_fix, v_fix, q.m, q.p, g);
            EXPECT_LE(pairing, kappa * bound) << "m=" << q.m << " p=" << q.p;
        }
    }
}
