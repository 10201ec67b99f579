#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ghd/instance.hpp"
#include "ghd/runtime.hpp"

namespace ghd {

/// How the number of sampled coordinates is chosen.
enum class SamplingRule {
  /// m = ceil(2 s n^2 / (U - L)^2): Hoeffding with deviation (U - L) / 2n,
  /// error <= e^{-s} in both classes, provably.
  Hoeffding,
  /// m = ceil(C s n U / (U - L)^2): the O(snU/(U-L)^2) rate with an
  /// empirical constant C. No proven guarantee.
  AsymptoticRate,
};

struct SamplingParams {
  GapParams gap;
  double s = 1.0;
  std::size_t trials = 1;  // m
  double threshold = 0.5;  // (L + U) / 2n
  SamplingRule rule = SamplingRule::Hoeffding;
  double rate_constant = 8.0;
};

/// Throws InvalidInput unless 0 <= L < U <= n and s > 0 (and C > 0 for AsymptoticRate).
SamplingParams derive_sampling_params(std::size_t n, std::size_t close_max, std::size_t far_min, double s,
                                      SamplingRule rule = SamplingRule::Hoeffding,
                                      double rate_constant = 8.0);

/// m + 1: one bit per sampled coordinate from Alice, one answer bit from Bob.
constexpr std::size_t sampling_cost(const SamplingParams& p) noexcept { return p.trials + 1; }

/// Coordinates both parties read off the public coin; with replacement.
std::vector<std::size_t> sampled_indices(const SamplingParams& params, std::uint64_t seed);

/// Number of sampled coordinates where x and y disagree (audit helper).
std::size_t count_sample_mismatches(const BitString& x, const BitString& y, const SamplingParams& params,
                                    std::uint64_t seed);

/// Bob's rule: 1 iff mismatches * n > m * (L + U) / 2, evaluated in integers.
int sampling_decision(std::size_t mismatches, const SamplingParams& params) noexcept;

class SamplingProtocol final : public Protocol {
 public:
  explicit SamplingProtocol(SamplingParams params) : params_(params) {}
  std::string name() const override { return "sampling"; }
  std::unique_ptr<Strategy> make_alice() const override;
  std::unique_ptr<Strategy> make_bob() const override;
  std::size_t bit_budget(std::size_t n) const override;
  const SamplingParams& params() const noexcept { return params_; }

 private:
  SamplingParams params_;
};

ProtocolOutcome run_sampling_protocol(const BitString& x, const BitString& y, const SamplingParams& params,
                                      SharedRandomness shared);

}  // namespace ghd
