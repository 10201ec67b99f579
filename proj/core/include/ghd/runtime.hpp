#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghd/bit_buffer.hpp"
#include "ghd/bit_string.hpp"
#include "ghd/instance.hpp"
#include "ghd/shared_randomness.hpp"

namespace ghd {

enum class Party { Alice, Bob };

constexpr Party other(Party p) noexcept { return p == Party::Alice ? Party::Bob : Party::Alice; }

struct Message {
  Party from = Party::Alice;
  BitBuffer payload;

  friend bool operator==(const Message&, const Message&) = default;
};

/// Everything that crossed the channel during one run.
struct ChannelLedger {
  std::size_t bits_alice_to_bob = 0;
  std::size_t bits_bob_to_alice = 0;
  std::size_t rounds = 0;  // maximal runs of same-direction messages
  std::vector<Message> transcript;

  std::size_t total_bits() const noexcept { return bits_alice_to_bob + bits_bob_to_alice; }

  /// One line per message: `A->B <bitcount> <hex-payload>`.
  std::string dump() const;

  friend bool operator==(const ChannelLedger&, const ChannelLedger&) = default;
};

struct ProtocolOutcome {
  int output = 0;
  ChannelLedger ledger;
};

/// What a strategy may see: its own input, its own cursor on the public coin,
/// and nothing else.
class PartyContext {
 public:
  PartyContext(Party self, const BitString& input, SharedRandomness shared) noexcept
      : self_(self), input_(&input), coins_(shared.stream()) {}

  Party self() const noexcept { return self_; }
  const BitString& input() const noexcept { return *input_; }
  /// Throws ContractViolation for the other party's input.
  const BitString& input_of(Party who) const;
  RandomStream& coins() noexcept { return coins_; }

 private:
  Party self_;
  const BitString* input_;
  RandomStream coins_;
};

/// Result of one turn: either a message handed to the other party, or the
/// final answer, which is announced to the other party as a single bit.
class Turn {
 public:
  static Turn send(BitBuffer payload) { return Turn(std::move(payload), std::nullopt); }
  static Turn output(int bit);

  bool is_output() const noexcept { return answer_.has_value(); }
  int answer() const { return answer_.value(); }
  const BitBuffer& payload() const noexcept { return payload_; }
  BitBuffer take_payload() noexcept { return std::move(payload_); }

 private:
  Turn(BitBuffer payload, std::optional<int> answer) : payload_(std::move(payload)), answer_(answer) {}

  BitBuffer payload_;
  std::optional<int> answer_;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  /// `incoming` is what the other party sent last (empty on an opening move).
  virtual Turn on_turn(PartyContext& ctx, const BitBuffer& incoming) = 0;
};

/// A two-party protocol is a recipe for a fresh pair of strategies. Must be
/// safe to call concurrently; per-run state lives in the strategies.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<Strategy> make_alice() const = 0;
  virtual std::unique_ptr<Strategy> make_bob() const = 0;
  virtual Party first_mover() const { return Party::Alice; }
  /// Bit budget for a run on n-bit inputs.
  virtual std::size_t bit_budget(std::size_t n) const;
};

struct RunOptions {
  Party first_mover = Party::Alice;
  /// Defaults to 64 * n^2 bits.
  std::optional<std::size_t> bit_budget;
};

std::size_t default_bit_budget(std::size_t n) noexcept;

/// Alternates turns starting with `options.first_mover` until a strategy
/// outputs. Throws BudgetExceeded past the bit budget (or after as many
/// empty turns), InvalidInput when x and y differ in length.
ProtocolOutcome run_protocol(Strategy& alice, Strategy& bob, const BitString& x, const BitString& y,
                             SharedRandomness shared, const RunOptions& options = {});

ProtocolOutcome run_protocol(const Protocol& protocol, const BitString& x, const BitString& y,
                             std::uint64_t seed, std::optional<std::size_t> bit_budget = std::nullopt);

using InputPair = std::pair<BitString, BitString>;

/// Max ledger total over the instances, each run under derive_seed(seed, i).
/// Throws InvalidInput on an empty instance set.
std::size_t measure_worst_case_cost(const Protocol& protocol, std::span<const InputPair> instances,
                                    std::uint64_t seed = 0);

struct ErrorEstimate {
  std::size_t trials = 0;
  std::size_t errors = 0;
  double fraction = 0.0;
  /// 3 * sqrt(p(1-p)/trials) at the empirical rate.
  double halfwidth = 0.0;
  std::size_t max_bits = 0;
};

/// Runs the protocol on one instance under `trials` derived seeds and counts
/// outputs that disagree with the promise class. Throws InvalidInput for a
/// Violated instance or zero trials.
ErrorEstimate estimate_error_rate(const Protocol& protocol, const GhdInstance& instance,
                                  std::size_t trials, std::uint64_t seed, unsigned threads = 1);

double monte_carlo_halfwidth(double p, std::size_t trials) noexcept;

/// Baseline: Alice sends x verbatim, Bob answers 1 iff H(x, y) > threshold.
class SendInputProtocol final : public Protocol {
 public:
  explicit SendInputProtocol(std::size_t threshold = 0) noexcept : threshold_(threshold) {}
  std::string name() const override { return "send-input"; }
  std::unique_ptr<Strategy> make_alice() const override;
  std::unique_ptr<Strategy> make_bob() const override;
  static std::size_t cost(std::size_t n) noexcept { return n + 1; }

 private:
  std::size_t threshold_;
};

/// Bob announces a fixed answer without listening.
class ConstantProtocol final : public Protocol {
 public:
  explicit ConstantProtocol(int answer) : answer_(answer) {}
  std::string name() const override { return "constant"; }
  std::unique_ptr<Strategy> make_alice() const override;
  std::unique_ptr<Strategy> make_bob() const override;
  Party first_mover() const override { return Party::Bob; }

 private:
  int answer_;
};

}  // namespace ghd
