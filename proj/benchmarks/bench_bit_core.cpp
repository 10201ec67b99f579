#include <benchmark/benchmark.h>

#include "ghd/ball_volume.hpp"
#include "ghd/bit_string.hpp"
#include "ghd/instance.hpp"

namespace {

void BM_HammingDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto [x, y] = ghd::random_pair_at_distance(n, n / 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ghd::hamming_distance(x, y));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n / 4));
}
BENCHMARK(BM_HammingDistance)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_BallVolume(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ghd::ball_volume(n, n / 4));
}
BENCHMARK(BM_BallVolume)->RangeMultiplier(4)->Range(64, 16384);

void BM_Log2BallVolume(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ghd::log2_ball_volume(n, n / 4));
}
BENCHMARK(BM_Log2BallVolume)->RangeMultiplier(4)->Range(64, 16384);

}  // namespace
