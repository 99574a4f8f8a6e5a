#include <benchmark/benchmark.h>

#include <random>

#include "grnn/bp.hpp"
#include "grnn/grnn.hpp"

namespace {

grnn::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  grnn::Matrix m(rows, cols);
  for (double& v : m.flat()) v = u(rng);
  return m;
}

void BM_Predict(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto model = grnn::train(random_matrix(n, 8, 1), random_matrix(n, 2, 2), 0.5);
  const grnn::Vector q(8, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(q));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Predict)->RangeMultiplier(4)->Range(64, 16384);

void BM_Train(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_matrix(n, 8, 1), y = random_matrix(n, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(grnn::train(x, y, 0.5));
}
BENCHMARK(BM_Train)->RangeMultiplier(4)->Range(64, 16384);

void BM_PredictBatch(benchmark::State& state) {
  const auto model = grnn::train(random_matrix(2000, 8, 1), random_matrix(2000, 2, 2), 0.5);
  const auto queries = random_matrix(500, 8, 3);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(model.predict_batch(queries, threads));
}
BENCHMARK(BM_PredictBatch)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_SelectSigma(benchmark::State& state) {
  const auto x = random_matrix(500, 4, 1), y = random_matrix(500, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(grnn::select_sigma(x, y, {}));
}
BENCHMARK(BM_SelectSigma)->Unit(benchmark::kMillisecond);

void BM_BpEpoch(benchmark::State& state) {
  const auto x = random_matrix(1000, 8, 1), y = random_matrix(1000, 2, 2);
  auto net = grnn::bp::init_network(8, 10, 2, 0);
  for (auto _ : state) {
    auto result = grnn::bp::train(net, x, y, {1, 1e-3});
    benchmark::DoNotOptimize(result.first);
  }
}
BENCHMARK(BM_BpEpoch)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
