#include <benchmark/benchmark.h>

#include "ghd/covering_code.hpp"
#include "ghd/det_protocol.hpp"
#include "ghd/sampling.hpp"
#include "ghd/sketch.hpp"
#include "ghd/streaming.hpp"

namespace {

void BM_SketchRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ghd::SketchProtocol protocol(ghd::derive_sketch_params(n, 4, n / 2, 2.0));
  const auto [x, y] = ghd::random_pair_at_distance(n, n / 2, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ghd::run_protocol(protocol, x, y, seed++));
}
BENCHMARK(BM_SketchRun)->RangeMultiplier(2)->Range(128, 4096)->Unit(benchmark::kMicrosecond);

void BM_SamplingRun(benchmark::State& state) {
  const ghd::SamplingProtocol protocol(ghd::derive_sampling_params(1000, 100, 900, 2.0));
  const auto [x, y] = ghd::random_pair_at_distance(std::size_t{1000}, std::size_t{500}, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ghd::run_protocol(protocol, x, y, seed++));
}
BENCHMARK(BM_SamplingRun);

void BM_GreedyCoveringCode(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ghd::greedy_covering_code(n, r));
}
BENCHMARK(BM_GreedyCoveringCode)
    ->Args({10, 1})
    ->Args({12, 2})
    ->Args({14, 1})
    ->Args({14, 3})
    ->Args({16, 3})
    ->Unit(benchmark::kMillisecond);

void BM_DetRun(benchmark::State& state) {
  const ghd::DetProtocol protocol(ghd::make_det_params(14, 7));
  const auto [x, y] = ghd::random_pair_at_distance(std::size_t{14}, std::size_t{9}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ghd::run_protocol(protocol, x, y, 0));
}
BENCHMARK(BM_DetRun);

void BM_StreamingReduction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ghd::AlgorithmFactory factory = [n] { return std::make_unique<ghd::ExactBitmapF0>(2 * n, 2); };
  const auto [x, y] = ghd::random_pair_at_distance(n, n / 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ghd::ghd_via_streaming(factory, 1.5, x, y));
}
BENCHMARK(BM_StreamingReduction)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();
