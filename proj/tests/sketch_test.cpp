#include <cmath>

#include <gtest/gtest.h>

#include "ghd/errors.hpp"
#include "ghd/sketch.hpp"

namespace ghd {
namespace {

// Bit width of the largest grid index magnitude plus a sign bit, computed
// with plain integers.
unsigned reference_word_width(std::size_t a, std::size_t n) {
  const long double cube = static_cast<long double>(n) * n * n;
  const auto max_index = static_cast<unsigned long long>(std::floor(std::sqrt(static_cast<long double>(a)) * cube));
  const unsigned long long levels = 2 * max_index + 1;
  unsigned bits = 0;
  while ((1ULL << bits) < levels) ++bits;
  return bits + 1;
}

TEST(SketchParams, WorkedExample) {
  const SketchParams p = derive_sketch_params(512, 4, 256, 2.0);
  EXPECT_EQ(p.blocks, 407u);
  EXPECT_EQ(p.block_length, 2u);
  EXPECT_EQ(p.padded_length, 814u);
  EXPECT_EQ(p.word_width, 30u);
  EXPECT_EQ(sketch_cost(p), 12211u);
  EXPECT_FALSE(p.trivial_mode);
  EXPECT_TRUE(p.hypothesis_holds);
  EXPECT_DOUBLE_EQ(p.threshold, 4.0 + 5.0 / 512);
  EXPECT_EQ(p.word_width, reference_word_width(2, 512));
}

TEST(SketchParams, TrivialMode) {
  const SketchParams p = derive_sketch_params(16, 0, 16, 16.0);
  EXPECT_TRUE(p.trivial_mode);
  EXPECT_EQ(p.blocks, 64u);
  EXPECT_EQ(sketch_cost(p), 17u);
  const auto x = BitString::from_string("1010101010101010");
  const auto out = run_protocol(SketchProtocol(p), x, x, 3);
  EXPECT_EQ(out.output, 0);
  EXPECT_EQ(out.ledger.total_bits(), 17u);
}

TEST(SketchParams, Hypothesis) {
  EXPECT_NEAR(sketch_min_exponent(512, 4, 256), std::pow(4.0 + 10.0 / 512, 3) / (256.0 * 256.0), 1e-15);
  EXPECT_LT(sketch_min_exponent(512, 4, 256), 0.001);
  EXPECT_NO_THROW(derive_sketch_params(512, 4, 256, 0.001));
  EXPECT_THROW(derive_sketch_params(100, 20, 40, 1.0), HypothesisViolation);
  const SketchParams allowed = derive_sketch_params(100, 20, 40, 1.0, true);
  EXPECT_FALSE(allowed.hypothesis_holds);
}

TEST(SketchParams, RejectsBadInput) {
  EXPECT_THROW(derive_sketch_params(100, 50, 50, 1.0), InvalidInput);
  EXPECT_THROW(derive_sketch_params(100, 0, 50, 0.0), InvalidInput);
  EXPECT_THROW(derive_sketch_params(100, 0, 50, -1.0), InvalidInput);
  EXPECT_THROW(derive_sketch_params(kMaxSketchLength + 1, 0, 50, 1.0), SizeLimitExceeded);
}

TEST(SketchParams, PaddingInvariant) {
  for (std::size_t n : {64, 100, 128, 257, 512, 1000}) {
    for (double s : {0.01, 0.1, 0.5, 1.0}) {
      const SketchParams p = derive_sketch_params(n, 0, n / 2, s);
      if (p.trivial_mode) continue;
      EXPECT_EQ(p.padded_length, p.blocks * p.block_length);
      EXPECT_GE(p.padded_length, n);
      EXPECT_LE(p.padded_length, 2 * n);
      EXPECT_EQ(p.block_length, (n + p.blocks - 1) / p.blocks);
      EXPECT_EQ(p.word_width, reference_word_width(p.block_length, n));
    }
  }
}

TEST(SketchParams, PaddingSweep) {
  for (std::size_t n = 1; n <= 10000; ++n) {
    const double u = static_cast<double>(n);
    for (double s : {u / 64.0, u / 1000.0, 1e-6 * u}) {
      if (s < sketch_min_exponent(n, 0, n)) continue;
      const SketchParams p = derive_sketch_params(n, 0, n, s);
      if (p.trivial_mode) continue;
      ASSERT_GE(p.padded_length, n) << "n=" << n << " s=" << s;
      ASSERT_LE(p.padded_length, 2 * n) << "n=" << n << " s=" << s;
    }
  }
}

TEST(UnitVector, OneDimension) {
  RandomStream s = SharedRandomness(1).stream();
  for (int i = 0; i < 100; ++i) {
    const auto v = gaussian_unit_vector(1, s);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(std::fabs(v[0]), 1.0);
  }
}

TEST(UnitVector, NormAndPositions) {
  RandomStream s = SharedRandomness(2).stream();
  for (std::size_t dim : {2, 3, 7, 50}) {
    const auto before = s.position();
    const auto v = gaussian_unit_vector(dim, s);
    EXPECT_EQ(s.position() - before, 2 * dim);
    double norm2 = 0.0;
    for (double c : v) norm2 += c * c;
    EXPECT_NEAR(std::sqrt(norm2), 1.0, 1e-12);
  }
}

// E <e1, v>^2 = 1/dim for v uniform on the sphere.
TEST(UnitVector, SecondMoment) {
  RandomStream s = SharedRandomness(3).stream();
  constexpr int kDraws = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double c = gaussian_unit_vector(4, s)[0];
    sum += c * c;
    sum2 += c * c * c * c;
  }
  const double mean = sum / kDraws;
  const double sd = std::sqrt((sum2 / kDraws - mean * mean) / kDraws);
  EXPECT_LT(std::fabs(mean - 0.25), 5 * sd);
}

TEST(Quantize, Examples) {
  EXPECT_EQ(quantize_projection(0.0, 7), 0);
  EXPECT_EQ(quantize_projection(1.0, 10), 1000);
  EXPECT_EQ(quantize_projection(0.12345678, 10), 123);
  EXPECT_EQ(quantize_projection(-0.12345678, 10), -123);
  EXPECT_THROW(quantize_projection(3.5, 10), ContractViolation);
}

TEST(SketchMessage, RoundTrip) {
  const SketchParams p = derive_sketch_params(512, 4, 256, 2.0);
  SketchMessage msg;
  const std::int64_t limit = (std::int64_t{1} << (p.word_width - 1)) - 1;
  for (std::size_t i = 0; i < p.blocks; ++i) {
    msg.indices.push_back(static_cast<std::int64_t>((i * 2654435761u) % 1000000) - 500000);
  }
  msg.indices[0] = limit;
  msg.indices[1] = -limit;
  msg.indices[2] = 0;
  const BitBuffer bits = encode_sketch_message(msg, p);
  EXPECT_EQ(bits.size(), p.blocks * p.word_width);
  EXPECT_EQ(decode_sketch_message(bits, p), msg);
}

TEST(SketchMessage, DecodeRejects) {
  const SketchParams p = derive_sketch_params(64, 0, 32, 0.5);
  BitBuffer short_buf;
  short_buf.push_bits(0, 3);
  EXPECT_THROW(decode_sketch_message(short_buf, p), ContractViolation);

  BitBuffer negative_zero;
  negative_zero.push_bit(true);
  negative_zero.push_bits(0, p.word_width - 1);
  for (std::size_t i = 1; i < p.blocks; ++i) negative_zero.push_bits(0, p.word_width);
  EXPECT_THROW(decode_sketch_message(negative_zero, p), ContractViolation);
}

TEST(SketchProtocol, ZeroInputAndReplay) {
  const SketchParams p = derive_sketch_params(512, 4, 256, 2.0);
  const SketchMessage zero = alice_sketch(BitString(512), p, SharedRandomness(1));
  for (auto v : zero.indices) EXPECT_EQ(v, 0);
  const BitString x = random_bit_string(512, 4);
  EXPECT_EQ(alice_sketch(x, p, SharedRandomness(9)), alice_sketch(x, p, SharedRandomness(9)));
  const auto a = run_protocol(SketchProtocol(p), x, x, 9);
  const auto b = run_protocol(SketchProtocol(p), x, x, 9);
  EXPECT_EQ(a.ledger, b.ledger);
  EXPECT_EQ(a.ledger.bits_alice_to_bob, 407u * 30u);
  EXPECT_EQ(a.output, 0);
}

TEST(SketchProtocol, EqualInputsResidualTiny) {
  const SketchParams p = derive_sketch_params(256, 0, 128, 1.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BitString x = random_bit_string(256, seed);
    const auto msg = alice_sketch(x, p, SharedRandomness(seed));
    const auto d = bob_decide(x, msg, p, SharedRandomness(seed));
    EXPECT_EQ(d.output, 0);
    EXPECT_LE(d.t_prime, 5.0 / 256);
  }
}

// Audit view: T <= H, |T - T'| <= 5/n, close never errs, decisions agree.
TEST(SketchProtocol, BoundChainAndOneSidedness) {
  const SketchParams p = derive_sketch_params(256, 3, 128, 1.0);
  const SketchProtocol protocol(p);
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const std::size_t d = seed % 2 ? 128 : seed % 4;
    const auto [x, y] = random_pair_at_distance(std::size_t{256}, d, seed * 31);
    const auto st = audit_sketch(x, y, p, SharedRandomness(seed));
    EXPECT_LE(st.t, static_cast<double>(d) + 1e-6);
    EXPECT_LE(std::fabs(st.t - st.t_prime), 5.0 / 256 + 1e-6);
    const auto out = run_protocol(protocol, x, y, seed);
    EXPECT_EQ(out.output, st.decision);
    if (d <= 3) {
      EXPECT_EQ(out.output, 0);
    }
  }
}

TEST(SketchProtocol, MismatchedInputLength) {
  const SketchParams p = derive_sketch_params(64, 0, 32, 0.5);
  EXPECT_THROW(alice_sketch(BitString(63), p, SharedRandomness(0)), ContractViolation);
}

}  // namespace
}  // namespace ghd
