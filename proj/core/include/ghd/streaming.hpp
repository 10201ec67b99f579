#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghd/bit_string.hpp"
#include "ghd/runtime.hpp"

namespace ghd {

/// Tokens drawn from {1, ..., universe}.
struct TokenStream {
  std::size_t universe = 0;
  std::vector<std::uint64_t> tokens;

  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

/// u_i = n x_i + i and v_i = n y_i + i (1-based i), both over universe 2n.
std::pair<TokenStream, TokenStream> encode_streams(const BitString& x, const BitString& y);
TokenStream concat(const TokenStream& a, const TokenStream& b);

/// Number of distinct tokens, via a presence bitmap over the universe.
/// Throws InvalidInput on a token outside [1, universe].
std::size_t exact_f0(const TokenStream& stream);

/// One decimal token per line.
std::string format_token_stream(const TokenStream& stream);
TokenStream parse_token_stream(std::string_view text, std::size_t universe);

/// Serialized algorithm state: `bit_length` bits, MSB-first within each byte.
struct StateSnapshot {
  std::vector<std::uint8_t> bytes;
  std::size_t bit_length = 0;

  friend bool operator==(const StateSnapshot&, const StateSnapshot&) = default;
};

/// A deterministic p-pass streaming algorithm. Everything it carries from one
/// token to the next must be in snapshot(); restore(snapshot()) on a fresh
/// instance has to reproduce all later behaviour.
class StreamingAlgorithm {
 public:
  virtual ~StreamingAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual std::size_t passes() const = 0;
  /// Called at the start of pass `pass` (0-based), before any token of that pass.
  virtual void begin_pass(std::size_t pass) = 0;
  virtual void consume(std::uint64_t token) = 0;
  virtual StateSnapshot snapshot() const = 0;
  virtual void restore(const StateSnapshot& state) = 0;
  /// The estimate E after the final pass.
  virtual std::uint64_t estimate() const = 0;
};

using AlgorithmFactory = std::function<std::unique_ptr<StreamingAlgorithm>()>;

/// Presence bitmap over the whole universe; E = F0 exactly, S = universe bits.
class ExactBitmapF0 final : public StreamingAlgorithm {
 public:
  explicit ExactBitmapF0(std::size_t universe, std::size_t passes = 1);
  std::string name() const override { return "exact-bitmap"; }
  std::size_t passes() const override { return passes_; }
  void begin_pass(std::size_t) override {}
  void consume(std::uint64_t token) override;
  StateSnapshot snapshot() const override;
  void restore(const StateSnapshot& state) override;
  std::uint64_t estimate() const override;

 private:
  std::size_t universe_;
  std::size_t passes_;
  std::vector<bool> seen_;
};

/// Deliberately undersized: remembers only tokens <= capacity, and counts
/// every occurrence of a larger token as a new distinct element. State is
/// `capacity` bits plus an occurrence counter. Not c-approximate in general.
class TruncatedBitmapF0 final : public StreamingAlgorithm {
 public:
  TruncatedBitmapF0(std::size_t universe, std::size_t capacity, std::size_t passes = 1);
  std::string name() const override { return "truncated-bitmap"; }
  std::size_t passes() const override { return passes_; }
  void begin_pass(std::size_t) override {}
  void consume(std::uint64_t token) override;
  StateSnapshot snapshot() const override;
  void restore(const StateSnapshot& state) override;
  std::uint64_t estimate() const override;

 private:
  unsigned counter_width() const noexcept;

  std::size_t universe_;
  std::size_t capacity_;
  std::size_t passes_;
  std::vector<bool> seen_;
  std::uint64_t overflow_ = 0;
};

/// t = ceil(n (c - 1)). Throws InvalidInput unless 1 < c < 2.
std::size_t reduction_gap(std::size_t n, double c);

struct ReductionRun {
  std::size_t n = 0;
  double c = 0.0;
  std::size_t t = 0;
  std::size_t distance = 0;
  std::size_t f0 = 0;          // exact distinct count of u.v
  std::uint64_t estimate = 0;  // E
  std::size_t passes = 0;      // p
  std::size_t state_bits = 0;  // S: largest snapshot handed over
  std::size_t handoffs = 0;    // 2p - 1
  std::size_t communication = 0;
  ChannelLedger ledger;

  /// communication <= 2 p S
  bool within_budget() const noexcept { return communication <= 2 * passes * state_bits; }
};

struct StreamingDecision {
  int output = 0;
  ReductionRun run;
};

/// Alice streams u, Bob streams v, with the algorithm state shipped across
/// the channel at every u/v boundary of every pass. Bob answers 0 iff
/// E < n + t. The whole run is repeated on fresh instances and must agree;
/// otherwise ContractViolation.
StreamingDecision ghd_via_streaming(const AlgorithmFactory& factory, double c, const BitString& x,
                                    const BitString& y);

struct SpaceBound {
  std::size_t t = 0;
  double precursor = 0.0;   // (n - log2 V(n, floor(t/2))) / 2p
  double asymptotic = 0.0;  // n (2 - c)^2 / p
};

/// Throws InvalidInput unless 1 < c < 2 and p >= 1.
SpaceBound space_lower_bound(std::size_t n, double c, std::size_t p);

/// Outcome of searching for a promise pair on which a candidate algorithm errs.
struct FalsificationReport {
  std::size_t pairs_tried = 0;
  std::size_t max_communication = 0;
  double communication_floor = 0.0;  // n - log2 V(n, floor(t/2))
  /// Communication below the floor: some promise pair must be decided wrongly.
  bool must_err = false;
  std::optional<std::pair<BitString, BitString>> counterexample;

  bool conclusive() const noexcept { return counterexample.has_value(); }
};

/// Tries `trials` pairs of each class (x = y, and H(x, y) uniform in [t, n])
/// and stops at the first wrong decision.
FalsificationReport falsify_streaming(const AlgorithmFactory& factory, std::size_t n, double c,
                                      std::size_t trials, std::uint64_t seed);

}  // namespace ghd
