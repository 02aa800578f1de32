#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "yp/frac_kernels.hpp"
#include "yp/holder_paths.hpp"

namespace {

std::vector<double> sample(std::size_t n, std::uint64_t seed) {
  return yp::generate_fbm({0.7, 1, seed}, n + 1, 1.0).component(0);
}

void BM_DerivativeLeft(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto f = sample(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(yp::kernels::derivative_left(f, 1.0 / double(n), 0.4));
  state.SetComplexityN(state.range(0));
}

void BM_DerivativeLeftSerial(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto f = sample(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(yp::kernels::serial::derivative_left(f, 1.0 / double(n), 0.4));
  state.SetComplexityN(state.range(0));
}

void BM_YoungFrac(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto f = sample(n, 1), g = sample(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(yp::kernels::young_frac(f, g, 1.0 / double(n), 0.4));
  state.SetComplexityN(state.range(0));
}

void BM_YoungFracSerial(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto f = sample(n, 1), g = sample(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(yp::kernels::serial::young_frac(f, g, 1.0 / double(n), 0.4));
  state.SetComplexityN(state.range(0));
}

void BM_YoungFracPath(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto f = sample(n, 1), g = sample(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(yp::kernels::young_frac_path(f, g, 1.0 / double(n), 0.4));
  state.SetComplexityN(state.range(0));
}

void BM_HolderNorm(benchmark::State& state) {
  const auto x = yp::generate_fbm({0.7, 1, 3}, std::size_t(state.range(0)) + 1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(yp::holder_norm(x, 0.6));
}

void BM_HolderNormSerial(benchmark::State& state) {
  const auto x = yp::generate_fbm({0.7, 1, 3}, std::size_t(state.range(0)) + 1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(yp::serial::holder_norm(x, 0.6));
}

void BM_FbmCirculant(benchmark::State& state) {
  const yp::FbmGenerator gen(0.7, std::size_t(state.range(0)) + 1, 1.0, yp::FbmMethod::Circulant);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen.sample(seed++));
}

}  // namespace

BENCHMARK(BM_DerivativeLeft)->RangeMultiplier(4)->Range(256, 4096)->Complexity();
BENCHMARK(BM_DerivativeLeftSerial)->RangeMultiplier(4)->Range(256, 4096)->Complexity();
BENCHMARK(BM_YoungFrac)->RangeMultiplier(4)->Range(256, 4096)->Complexity();
BENCHMARK(BM_YoungFracSerial)->RangeMultiplier(4)->Range(256, 4096)->Complexity();
BENCHMARK(BM_YoungFracPath)->RangeMultiplier(4)->Range(256, 1024)->Complexity();
BENCHMARK(BM_HolderNorm)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK(BM_HolderNormSerial)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK(BM_FbmCirculant)->RangeMultiplier(4)->Range(1024, 65536);

BENCHMARK_MAIN();
