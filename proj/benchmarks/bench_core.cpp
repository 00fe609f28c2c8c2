#include <benchmark/benchmark.h>

#include "sensecap/ensembles.hpp"
#include "sensecap/infotheory.hpp"
#include "sensecap/simulator.hpp"

using namespace sensecap;

static void BM_MlDecodeExhaustive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = 2 * n;
  const auto g = sample_matrix(EnsembleSpec::gaussian(), m, n, 1);
  const auto x = sample_signal(SignalModel::bernoulli(0.5), n, 2);
  const auto y = observe(g.entries, x, 10.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ml_decode_exhaustive(y, g.entries, 10.0));
  state.SetComplexityN(1LL << n);
}
BENCHMARK(BM_MlDecodeExhaustive)->DenseRange(8, 16, 4)->Complexity(benchmark::oN);

static void BM_OverlapPmf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(overlap_pmf(n, n / 10 + 1, n / 5 + 1).entropy_bits());
}
BENCHMARK(BM_OverlapPmf)->Arg(40)->Arg(200)->Arg(2000);

static void BM_SampleMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_matrix(EnsembleSpec::gaussian(0.2), n / 4, n, seed++));
}
BENCHMARK(BM_SampleMatrix)->Arg(64)->Arg(256);

static void BM_MiLogdet(benchmark::State& state) {
  const auto g = sample_matrix(EnsembleSpec::gaussian(), 16, 64, 5);
  for (auto _ : state) benchmark::DoNotOptimize(mi_logdet_gaussian(g, 0.5, 10.0));
}
BENCHMARK(BM_MiLogdet);
BENCHMARK_MAIN();
