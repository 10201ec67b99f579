#include <bit>
#include <cmath>

#include <gtest/gtest.h>

#include "ghd/ball_volume.hpp"
#include "ghd/errors.hpp"

namespace ghd {
namespace {

// Counts points of {0,1}^n within distance r of 0^n by enumeration.
std::uint64_t enumerate_ball(std::size_t n, std::size_t r) {
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    if (static_cast<std::size_t>(std::popcount(v)) <= r) ++count;
  }
  return count;
}

TEST(BallVolume, HandExamples) {
  EXPECT_EQ(ball_volume(std::size_t{5}, std::size_t{0}).value, 1);
  EXPECT_EQ(ball_volume(std::size_t{5}, std::size_t{5}).value, 32);
  EXPECT_EQ(ball_volume(std::size_t{10}, std::size_t{3}).value, 176);
  EXPECT_EQ(ball_volume(std::size_t{10}, std::size_t{3}).to_string(), "176");
  EXPECT_EQ(ball_volume(std::size_t{10}, std::size_t{2}).value, 56);
}

TEST(BallVolume, Log2Examples) {
  EXPECT_DOUBLE_EQ(log2_ball_volume(5, 5), 5.0);
  EXPECT_DOUBLE_EQ(log2_ball_volume(5, 0), 0.0);
  EXPECT_NEAR(log2_ball_volume(10, 3), std::log2(176.0), 1e-12);
}

TEST(BallVolume, MatchesEnumerationUpTo16) {
  for (std::size_t n = 1; n <= 16; ++n) {
    for (std::size_t r = 0; r <= n; ++r) {
      EXPECT_EQ(ball_volume(n, r).value, enumerate_ball(n, r)) << "n=" << n << " r=" << r;
    }
  }
}

TEST(BallVolume, RejectsBadRadius) {
  EXPECT_THROW(ball_volume(std::size_t{4}, std::size_t{5}), InvalidInput);
  EXPECT_THROW(ball_volume(4LL, -1LL), InvalidInput);
  EXPECT_THROW(ball_volume(-3LL, 0LL), InvalidInput);
}

TEST(BallVolume, MonotoneAndBounded) {
  for (std::size_t n = 1; n <= 80; ++n) {
    mpz_class cube;
    mpz_ui_pow_ui(cube.get_mpz_t(), 2, n);
    for (std::size_t r = 0; r < n; ++r) {
      EXPECT_LT(ball_volume(n, r).value, ball_volume(n, r + 1).value);
    }
    EXPECT_EQ(ball_volume(n, n).value, cube);
    EXPECT_EQ(ball_volume(n, 0).value, 1);
  }
}

// Binomial sum with no symmetry shortcut.
TEST(BallVolume, LargeNAgainstDirectSum) {
  for (std::size_t n : {100, 257, 1000}) {
    for (std::size_t r : {std::size_t{0}, std::size_t{1}, n / 4, n / 2, n / 2 + 1, n - 3, n}) {
      mpz_class sum = 0;
      for (std::size_t i = 0; i <= r; ++i) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), n, i);
        sum += c;
      }
      EXPECT_EQ(ball_volume(n, r).value, sum) << "n=" << n << " r=" << r;
    }
  }
}

TEST(BallVolume, Log2OfHugeVolumes) {
  // V(n, n) = 2^n exceeds double range for n = 5000, log2 must still be exact-ish.
  EXPECT_NEAR(log2_ball_volume(5000, 5000), 5000.0, 1e-9);
  EXPECT_NEAR(log2_exact(mpz_class(1) << 3000), 3000.0, 1e-12);
  EXPECT_EQ(ceil_log2_exact(mpz_class(1)), 0u);
  EXPECT_EQ(ceil_log2_exact(mpz_class(176)), 8u);
  EXPECT_EQ(ceil_log2_exact(mpz_class(256)), 8u);
  EXPECT_EQ(ceil_log2_exact(mpz_class(257)), 9u);
}

TEST(BallVolume, Binomial) {
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(0, 0), 1);
}

}  // namespace
}  // namespace ghd
