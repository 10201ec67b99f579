#include <random>

#include <gtest/gtest.h>

#include "ghd/bit_string.hpp"
#include "ghd/errors.hpp"

namespace ghd {
namespace {

std::size_t naive_distance(const std::string& a, const std::string& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::string random_text(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, '0');
  for (auto& ch : s) ch = (rng() & 1) ? '1' : '0';
  return s;
}

TEST(BitString, HandExamples) {
  EXPECT_EQ(hamming_distance(BitString::from_string("0000"), BitString::from_string("0000")), 0u);
  EXPECT_EQ(hamming_distance(BitString::from_string("1010"), BitString::from_string("0101")), 4u);
  EXPECT_EQ(hamming_distance(BitString::from_string("10110"), BitString::from_string("00111")), 2u);
}

TEST(BitString, TextRoundTrip) {
  const auto x = BitString::from_string("10110");
  EXPECT_EQ(x.size(), 5u);
  EXPECT_TRUE(x.test(0));
  EXPECT_FALSE(x.test(1));
  EXPECT_EQ(x.to_string(), "10110");
  EXPECT_EQ(x.count(), 3u);
}

TEST(BitString, RejectsBadText) {
  EXPECT_THROW(BitString::from_string(""), InvalidInput);
  EXPECT_THROW(BitString::from_string("10a1"), InvalidInput);
  EXPECT_THROW(BitString(0), InvalidInput);
}

TEST(BitString, LengthMismatchThrows) {
  EXPECT_THROW(hamming_distance(BitString(4), BitString(5)), InvalidInput);
}

TEST(BitString, OutOfRangeIndex) {
  BitString x(3);
  EXPECT_THROW(x.set(3), InvalidInput);
  EXPECT_THROW((void)x.test(7), InvalidInput);
}

TEST(BitString, IntegerRoundTrip) {
  for (std::uint64_t v = 0; v < 256; ++v) {
    const auto x = BitString::from_integer(8, v);
    EXPECT_EQ(x.to_integer(), v);
    EXPECT_EQ(x.count(), static_cast<std::size_t>(__builtin_popcountll(v)));
  }
}

TEST(BitString, HexRoundTrip) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1, 3, 4, 5, 63, 64, 65, 130}) {
    const auto x = BitString::from_string(random_text(rng, n));
    EXPECT_EQ(x.to_hex().size(), (n + 3) / 4);
    EXPECT_EQ(BitString::from_hex(n, x.to_hex()), x);
  }
  EXPECT_EQ(BitString::from_string("10110").to_hex(), "16");
}

TEST(BitString, ComplementAndOnes) {
  for (std::size_t n : {1, 7, 64, 65, 200}) {
    const BitString zero(n);
    EXPECT_EQ(zero.complement(), BitString::ones(n));
    EXPECT_EQ(BitString::ones(n).count(), n);
    EXPECT_EQ(hamming_distance(zero, BitString::ones(n)), n);
  }
}

// Packed popcount against a character-by-character count, lengths across
// word boundaries.
TEST(BitString, MatchesNaiveDistance) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    const auto a = random_text(rng, n);
    const auto b = random_text(rng, n);
    EXPECT_EQ(hamming_distance(BitString::from_string(a), BitString::from_string(b)), naive_distance(a, b));
  }
}

TEST(BitString, MetricAxioms) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 150;
    const auto x = BitString::from_string(random_text(rng, n));
    const auto y = BitString::from_string(random_text(rng, n));
    const auto z = BitString::from_string(random_text(rng, n));
    EXPECT_EQ(hamming_distance(x, x), 0u);
    EXPECT_EQ(hamming_distance(x, y), hamming_distance(y, x));
    EXPECT_LE(hamming_distance(x, z), hamming_distance(x, y) + hamming_distance(y, z));
    if (hamming_distance(x, y) == 0) {
      EXPECT_EQ(x, y);
    }
  }
}

TEST(BitString, FlipChangesDistanceByOne) {
  BitString x = BitString::from_string("0110100111");
  const BitString y = x;
  x.flip(9);
  EXPECT_EQ(hamming_distance(x, y), 1u);
  x.flip(9);
  EXPECT_EQ(x, y);
}

}  // namespace
}  // namespace ghd
