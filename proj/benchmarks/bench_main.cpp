#include <benchmark/benchmark.h>

#include "lowrank/lowrank.hpp"

using namespace lowrank;

static void BM_NumericalRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = rectangle_partition_random(n, n, 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(numerical_rank(m));
}
BENCHMARK(BM_NumericalRank)->Arg(16)->Arg(64)->Arg(256);

static void BM_JohnRescale(benchmark::State& state) {
  const auto kl = kotlov_lovasz(static_cast<std::size_t>(state.range(0)));
  const auto f = rank_factorization(kl.matrix);
  for (auto _ : state) benchmark::DoNotOptimize(john_rescale(f));
}
BENCHMARK(BM_JohnRescale)->Arg(1)->Arg(2)->Arg(3);

static void BM_MultiHyperplaneAttempt(benchmark::State& state) {
  const auto kl = kotlov_lovasz(static_cast<std::size_t>(state.range(0)));
  const auto f = john_rescale(rank_factorization(kl.matrix));
  const auto mu = EntryMeasure::uniform(kl.matrix.n_rows(), kl.matrix.n_cols());
  const RoundingContext ctx(kl.matrix, f, mu);
  RoundingConfig cfg{.delta = 1.0 / (8.0 * static_cast<double>(f.dim()))};
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_multi_hyperplane(ctx, cfg, i++));
}
BENCHMARK(BM_MultiHyperplaneAttempt)->Arg(1)->Arg(2);

static void BM_BestAlmostMonoOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = rectangle_partition_random(n, n, 6, 3);
  const auto mu = EntryMeasure::uniform(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_best_almost_mono(m, mu, 0.1));
}
BENCHMARK(BM_BestAlmostMonoOracle)->Arg(8)->Arg(12)->Arg(16);

static void BM_BuildProtocol(benchmark::State& state) {
  const auto kl = kotlov_lovasz(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_protocol(kl.matrix));
}
BENCHMARK(BM_BuildProtocol)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
