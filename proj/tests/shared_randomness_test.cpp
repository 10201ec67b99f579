#include <array>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "ghd/shared_randomness.hpp"

namespace ghd {
namespace {

TEST(SharedRandomness, CounterBased) {
  const SharedRandomness a(42), b(42), c(43);
  for (std::uint64_t pos = 0; pos < 100; ++pos) {
    EXPECT_EQ(a.word_at(pos), b.word_at(pos));
    EXPECT_NE(a.word_at(pos), c.word_at(pos));
  }
  // Random access agrees with sequential reads.
  RandomStream s = a.stream();
  for (std::uint64_t pos = 0; pos < 100; ++pos) EXPECT_EQ(s.next_u64(), a.word_at(pos));
  EXPECT_EQ(s.position(), 100u);
}

TEST(SharedRandomness, DeriveSeedSpreads) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(1, i));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(9, 9), derive_seed(9, 9));
}

TEST(RandomStream, GaussianUsesTwoPositions) {
  RandomStream s = SharedRandomness(7).stream();
  (void)s.next_gaussian();
  EXPECT_EQ(s.position(), 2u);
  (void)s.next_unit();
  EXPECT_EQ(s.position(), 3u);
}

TEST(RandomStream, SeekReplays) {
  RandomStream s = SharedRandomness(7).stream();
  s.seek(50);
  const double g = s.next_gaussian();
  s.seek(50);
  EXPECT_EQ(s.next_gaussian(), g);
}

TEST(RandomStream, UnitRanges) {
  RandomStream s = SharedRandomness(1).stream();
  for (int i = 0; i < 100000; ++i) {
    const double u = s.next_unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = s.next_open_unit();
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(RandomStream, UniformBelowIsUnbiased) {
  RandomStream s = SharedRandomness(3).stream();
  constexpr std::uint64_t kBins = 7;
  constexpr int kDraws = 70000;
  std::array<int, kBins> counts{};
  for (int i = 0; i < kDraws; ++i) {
    const auto v = s.uniform_below(kBins);
    ASSERT_LT(v, kBins);
    ++counts[v];
  }
  // Chi-square with 6 degrees of freedom; 22.46 is the 0.999 quantile.
  double chi2 = 0.0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);
}

TEST(RandomStream, GaussianMoments) {
  RandomStream s = SharedRandomness(5).stream();
  constexpr int kDraws = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double g = s.next_gaussian();
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / kDraws;
  const double var = sum2 / kDraws - mean * mean;
  EXPECT_LT(std::fabs(mean), 5.0 / std::sqrt(kDraws));
  // Var of the sample variance of N(0,1) is 2 / N.
  EXPECT_LT(std::fabs(var - 1.0), 5.0 * std::sqrt(2.0 / kDraws));
}

}  // namespace
}  // namespace ghd
