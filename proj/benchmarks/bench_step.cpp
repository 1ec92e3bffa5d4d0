// Step throughput: full graph path (per-vertex weight index) versus the
// aggregate urn chain for the multiplicative model with alpha = 0.
#include <benchmark/benchmark.h>

#include "fitpa/rng.hpp"
#include "fitpa/sim.hpp"
#include "fitpa/types.hpp"
#include "fitpa/urn.hpp"

namespace {

using namespace fitpa;

TypeAssignment bench_ta(int m) { return TypeAssignment::linear(m); }

MultiplicativeFitness bench_fm() { return MultiplicativeFitness{Rat(3, 2), Rat(0)}; }

void BM_graph_step(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto ta = bench_ta(m);
  const FitnessModel fm = bench_fm();
  const auto g0 = default_initial_graph(ta, fm);
  SimState s(ta, fm, g0);
  s.reserve(1 << 22);
  Rng rng(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.step(rng));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_urn_step(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto ta = bench_ta(m);
  const FitnessModel fm = bench_fm();
  const auto g0 = default_initial_graph(ta, fm);
  UrnState u = UrnState::from_graph(ta, fm, g0);
  Rng rng(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(urn_step(u, ta, rng));
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_graph_step)->Arg(2)->Arg(8);
BENCHMARK(BM_urn_step)->Arg(2)->Arg(8);

BENCHMARK_MAIN();
