#include <benchmark/benchmark.h>

#include "copson/conditions.hpp"
#include "copson/discretization.hpp"
#include "copson/oracle.hpp"

using namespace copson;

namespace {

const WeightExpr u_sing = WeightExpr::parse("pow(1,-0.5)");
const WeightExpr v_sing = WeightExpr::parse("pow(1,-0.75)");
const WeightExpr w_cut = WeightExpr::parse("restrict(pow(1,0.5),0.5,4)");

}  // namespace

// Fresh object each iteration so the memo does not hide the quadrature.
static void BM_Phi(benchmark::State& state) {
    const double m = state.range(0) / 2.0;
    double t = 0.37;
    for (auto _ : state) {
        const FundamentalFunction F(u_sing, v_sing, m, 1.5);
        benchmark::DoNotOptimize(F.phi(t));
    }
}
BENCHMARK(BM_Phi)->Arg(2)->Arg(4);

static void BM_BuildSequence(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const FundamentalFunction F(u_sing, WeightExpr::parse("exp(1,0.3)"), 2, 0.7);
        benchmark::DoNotOptimize(build_sequence(F, depth).t.data());
    }
}
BENCHMARK(BM_BuildSequence)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_EmbeddingConstant(benchmark::State& state) {
    static const double mpq[][3] = {{1, 1, 2}, {1, 3, 2}, {2, 0.5, 0.8}, {2, 3, 0.5}};
    const auto& e = mpq[state.range(0)];
    for (auto _ : state) {
        benchmark::DoNotOptimize(embedding_constant(u_sing, v_sing, w_cut, e[0], e[1], e[2]).C_estimate);
    }
    state.SetLabel("case " + to_string(classify(e[0], e[1], e[2]).regime));
}
BENCHMARK(BM_EmbeddingConstant)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_Oracle(benchmark::State& state) {
    GridOptions g;
    g.lo_exp = -12;
    g.hi_exp = 12;
    g.tol = 1e-9;
    const OptimizerBudget budget{static_cast<int>(state.range(0)), 16, 0, 8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            empirical_embedding_constant(u_sing, v_sing, w_cut, 2, 3, 0.5, budget, g).C_emp);
    }
}
BENCHMARK(BM_Oracle)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
