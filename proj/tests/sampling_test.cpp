#include <cmath>

#include <gtest/gtest.h>

#include "ghd/errors.hpp"
#include "ghd/sampling.hpp"

namespace ghd {
namespace {

TEST(SamplingParams, HoeffdingCounts) {
  EXPECT_EQ(derive_sampling_params(100, 0, 100, 1.0).trials, 2u);
  EXPECT_EQ(derive_sampling_params(100, 40, 60, 1.0).trials, 50u);
  EXPECT_DOUBLE_EQ(derive_sampling_params(100, 40, 60, 1.0).threshold, 0.5);
  // 2 * 2 * 10^4 / 80^2 = 6.25
  EXPECT_EQ(derive_sampling_params(100, 10, 90, 2.0).trials, 7u);
}

TEST(SamplingParams, AsymptoticRateCounts) {
  // 8 * 1 * 100 * 60 / 20^2 = 120
  const auto p = derive_sampling_params(100, 40, 60, 1.0, SamplingRule::AsymptoticRate);
  EXPECT_EQ(p.trials, 120u);
  EXPECT_EQ(derive_sampling_params(100, 40, 60, 1.0, SamplingRule::AsymptoticRate, 2.0).trials, 30u);
}

TEST(SamplingParams, Rejects) {
  EXPECT_THROW(derive_sampling_params(100, 60, 60, 1.0), InvalidInput);
  EXPECT_THROW(derive_sampling_params(100, 10, 101, 1.0), InvalidInput);
  EXPECT_THROW(derive_sampling_params(100, 10, 50, 0.0), InvalidInput);
  EXPECT_THROW(derive_sampling_params(100, 10, 50, 1.0, SamplingRule::AsymptoticRate, -1.0), InvalidInput);
}

TEST(SamplingDecision, Threshold) {
  const auto p = derive_sampling_params(100, 40, 60, 1.0);  // m = 50
  EXPECT_EQ(sampling_decision(25, p), 0);  // exactly the midpoint is still close
  EXPECT_EQ(sampling_decision(26, p), 1);
  EXPECT_EQ(sampling_decision(0, p), 0);
}

TEST(SamplingProtocol, ExtremeInputs) {
  const auto p = derive_sampling_params(64, 8, 56, 1.5);
  const SamplingProtocol protocol(p);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const BitString x = random_bit_string(64, seed);
    const auto same = run_protocol(protocol, x, x, seed);
    EXPECT_EQ(same.output, 0);
    EXPECT_EQ(same.ledger.total_bits(), p.trials + 1);
    EXPECT_EQ(run_protocol(protocol, x, x.complement(), seed).output, 1);
  }
}

// The protocol's answer is the threshold rule applied to the audited mismatch count.
TEST(SamplingProtocol, MatchesAuditView) {
  const auto p = derive_sampling_params(50, 5, 30, 1.0);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto [x, y] = random_pair_at_distance(std::size_t{50}, static_cast<std::size_t>(seed % 51), seed);
    const auto out = run_sampling_protocol(x, y, p, SharedRandomness(seed));
    const std::size_t mism = count_sample_mismatches(x, y, p, seed);
    const double fraction = static_cast<double>(mism) / static_cast<double>(p.trials);
    EXPECT_EQ(out.output, fraction > p.threshold ? 1 : 0);
    EXPECT_EQ(out.ledger.bits_alice_to_bob, p.trials);
    EXPECT_EQ(out.ledger.bits_bob_to_alice, 1u);
  }
}

TEST(SamplingProtocol, IndicesAreInRangeAndShared) {
  const auto p = derive_sampling_params(37, 0, 37, 4.0);
  const auto a = sampled_indices(p, 12);
  EXPECT_EQ(a, sampled_indices(p, 12));
  EXPECT_EQ(a.size(), p.trials);
  for (auto i : a) EXPECT_LT(i, 37u);
}

TEST(SamplingProtocol, ErrorRateBothClasses) {
  const auto p = derive_sampling_params(100, 10, 90, 2.0);
  const SamplingProtocol protocol(p);
  constexpr std::size_t kTrials = 2000;
  const double allowance = std::exp(-2.0) + 3 * std::sqrt(std::exp(-2.0) / kTrials);
  for (std::size_t d : {std::size_t{10}, std::size_t{90}}) {
    const auto [x, y] = random_pair_at_distance(std::size_t{100}, d, d);
    const GhdInstance inst({100, 10, 90}, x, y);
    const ErrorEstimate e = estimate_error_rate(protocol, inst, kTrials, 77);
    EXPECT_LE(e.fraction, allowance) << "d=" << d;
    EXPECT_EQ(e.max_bits, p.trials + 1);
  }
}

}  // namespace
}  // namespace ghd
