#include <benchmark/benchmark.h>

#include "rainbow/nestposet.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/restrict.hpp"

using namespace rainbow;

static void BM_ExactSolverRainbow(benchmark::State& st) {
  const RainbowGeometry g = RainbowGeometry::make(static_cast<int>(st.range(0)));
  const SuperclassFunction f = restrict_values(g.mu(2), g.N);
  for (auto _ : st) benchmark::DoNotOptimize(decompose_exact(f, 2 * static_cast<int>(st.range(0)) + 8));
}
BENCHMARK(BM_ExactSolverRainbow)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_ClosedFormRainbow(benchmark::State& st) {
  const GroundSet N = GroundSet::first(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(rainbow::rainbow(N, 2, RainbowTarget::Superchars));
}
BENCHMARK(BM_ClosedFormRainbow)->DenseRange(2, 7)->Unit(benchmark::kMillisecond);

static void BM_SuperclassOrbits(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0)), p = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(oracle::superclass_orbits(n, p));
}
BENCHMARK(BM_SuperclassOrbits)->Args({4, 2})->Args({5, 2})->Args({6, 2})->Args({4, 3})->Unit(benchmark::kMillisecond);

static void BM_PosetBinomNestedRainbow(benchmark::State& st) {
  // fully nested rainbow on 2r points; its block poset is a chain
  const int r = static_cast<int>(st.range(0));
  std::vector<Arc> arcs;
  for (int t = 1; t <= r; ++t) arcs.push_back({t, 2 * r + 1 - t});
  const Poset P = block_poset(SetPartition(GroundSet::first(2 * r), arcs));
  for (auto _ : st)
    for (long k = 0; k <= static_cast<long>(P.size()); ++k) benchmark::DoNotOptimize(poset_binom(P, k));
}
BENCHMARK(BM_PosetBinomNestedRainbow)->RangeMultiplier(2)->Range(4, 32);

static void BM_CountSubspaces(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(oracle::count_subspaces(n, n / 2, 2));
}
BENCHMARK(BM_CountSubspaces)->DenseRange(3, 6);

static void BM_QBinom(benchmark::State& st) {
  const long n = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(qbinom(n, n / 2));
}
BENCHMARK(BM_QBinom)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK_MAIN();
