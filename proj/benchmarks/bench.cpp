// Microbenchmarks for the hot numerical kernels.

#include <benchmark/benchmark.h>

#include "qmimo/coherent.hpp"
#include "qmimo/covariance.hpp"
#include "qmimo/orthant.hpp"
#include "qmimo/rng.hpp"
#include "qmimo/scalar.hpp"
#include "qmimo/simulator.hpp"

using namespace qmimo;

static void BM_Xi(benchmark::State& state) {
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xi(s));
    s += 0.001;
    if (s > 30.0) s = 0.1;
  }
}
BENCHMARK(BM_Xi);

static void BM_ZetaSmall(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zeta(2, 0.5));
}
BENCHMARK(BM_ZetaSmall);

static void BM_ZetaLarge(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zeta(2, 25.0));
}
BENCHMARK(BM_ZetaLarge);

static void BM_AlphaCoherent(benchmark::State& state) {
  double snr = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(log_alpha_coherent(snr, 4));
}
BENCHMARK(BM_AlphaCoherent)->Arg(1)->Arg(100)->Arg(10000);

static void BM_SampleUniformQ(benchmark::State& state) {
  int T = static_cast<int>(state.range(0));
  Rng rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_uniform_Q(T, 0.8, rng));
}
BENCHMARK(BM_SampleUniformQ)->Arg(3)->Arg(6)->Arg(12);

static void BM_VolQMc(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(vol_Q_mc(4, 0.9, 100000, 2));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_VolQMc);

static void BM_PmfT3(benchmark::State& state) {
  CorrelationVector q = make_correlation_vector(3, {0.3, -0.2, 0.4});
  for (auto _ : state) benchmark::DoNotOptimize(pmf_t3(q));
}
BENCHMARK(BM_PmfT3);

static void BM_PmfMc(benchmark::State& state) {
  CorrelationVector q = make_correlation_vector(4, {0.3, -0.2, 0.4, 0.1, 0.0, 0.2});
  for (auto _ : state)
    benchmark::DoNotOptimize(pmf_mc(q, 100000, 3));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_PmfMc);

static void BM_MiExactT2(benchmark::State& state) {
  int nr = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mi_exact_t2(nr, 0.5, PriorKind::jeffreys));
}
BENCHMARK(BM_MiExactT2)->Arg(1024)->Arg(65536);

static void BM_SimulateBlock(benchmark::State& state) {
  CorrelationVector q = make_correlation_vector(3, {0.2, 0.1, -0.3});
  Eigen::MatrixXd X = input_from_q(q, 4.0);
  uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_block(X, 1000, ++seed));
}
BENCHMARK(BM_SimulateBlock);

BENCHMARK_MAIN();
