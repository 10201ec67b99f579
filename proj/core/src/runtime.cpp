#include "ghd/runtime.hpp"

#include <cmath>
#include <sstream>

#include "ghd/errors.hpp"
#include "ghd/parallel.hpp"

namespace ghd {

std::string ChannelLedger::dump() const {
  std::ostringstream out;
  for (const Message& m : transcript) {
    out << (m.from == Party::Alice ? "A->B " : "B->A ") << m.payload.size() << ' '
        << m.payload.to_hex() << '\n';
  }
  return out.str();
}

const BitString& PartyContext::input_of(Party who) const {
  if (who != self_) throw ContractViolation("strategy attempted to read the other party's input");
  return *input_;
}

Turn Turn::output(int bit) {
  if (bit != 0 && bit != 1) throw ContractViolation("protocol output must be 0 or 1");
  BitBuffer announce;
  announce.push_bit(bit == 1);
  return Turn(std::move(announce), bit);
}

std::size_t default_bit_budget(std::size_t n) noexcept { return 64 * n * n; }

std::size_t Protocol::bit_budget(std::size_t n) const { return default_bit_budget(n); }

ProtocolOutcome run_protocol(Strategy& alice, Strategy& bob, const BitString& x, const BitString& y,
                             SharedRandomness shared, const RunOptions& options) {
  if (x.size() != y.size()) throw InvalidInput("run_protocol: inputs differ in length");
  const std::size_t budget = options.bit_budget.value_or(default_bit_budget(x.size()));

  PartyContext alice_ctx(Party::Alice, x, shared);
  PartyContext bob_ctx(Party::Bob, y, shared);

  ProtocolOutcome outcome;
  ChannelLedger& ledger = outcome.ledger;
  Party active = options.first_mover;
  BitBuffer inbox;
  std::size_t silent_turns = 0;

  for (;;) {
    Strategy& strategy = active == Party::Alice ? alice : bob;
    PartyContext& ctx = active == Party::Alice ? alice_ctx : bob_ctx;
    Turn turn = strategy.on_turn(ctx, inbox);
    const bool finished = turn.is_output();
    const int answer = finished ? turn.answer() : 0;
    BitBuffer payload = turn.take_payload();

    if (payload.empty()) {
      if (++silent_turns > budget) throw BudgetExceeded("protocol made no progress within the bit budget");
    } else {
      if (ledger.total_bits() + payload.size() > budget) {
        throw BudgetExceeded("protocol exceeded its bit budget of " + std::to_string(budget) + " bits");
      }
      if (ledger.transcript.empty() || ledger.transcript.back().from != active) ++ledger.rounds;
      (active == Party::Alice ? ledger.bits_alice_to_bob : ledger.bits_bob_to_alice) += payload.size();
      ledger.transcript.push_back(Message{active, payload});
    }

    if (finished) {
      outcome.output = answer;
      return outcome;
    }
    inbox = std::move(payload);
    active = other(active);
  }
}

ProtocolOutcome run_protocol(const Protocol& protocol, const BitString& x, const BitString& y,
                             std::uint64_t seed, std::optional<std::size_t> bit_budget) {
  auto alice = protocol.make_alice();
  auto bob = protocol.make_bob();
  RunOptions options;
  options.first_mover = protocol.first_mover();
  options.bit_budget = bit_budget.value_or(protocol.bit_budget(x.size()));
  return run_protocol(*alice, *bob, x, y, SharedRandomness(seed), options);
}

std::size_t measure_worst_case_cost(const Protocol& protocol, std::span<const InputPair> instances,
                                    std::uint64_t seed) {
  if (instances.empty()) throw InvalidInput("measure_worst_case_cost: empty instance set");
  std::size_t worst = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& [x, y] = instances[i];
    const ProtocolOutcome out = run_protocol(protocol, x, y, derive_seed(seed, i));
    worst = std::max(worst, out.ledger.total_bits());
  }
  return worst;
}

double monte_carlo_halfwidth(double p, std::size_t trials) noexcept {
  if (trials == 0) return 0.0;
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ErrorEstimate estimate_error_rate(const Protocol& protocol, const GhdInstance& instance,
                                  std::size_t trials, std::uint64_t seed, unsigned threads) {
  const auto truth = expected_output(instance.promise());
  if (!truth) throw InvalidInput("estimate_error_rate: instance violates the promise");
  if (trials == 0) throw InvalidInput("estimate_error_rate: need at least one trial");

  std::vector<unsigned char> wrong(trials, 0);
  std::vector<std::size_t> bits(trials, 0);
  parallel_for(trials, threads, [&](std::size_t i) {
    const ProtocolOutcome out = run_protocol(protocol, instance.x(), instance.y(), derive_seed(seed, i));
    wrong[i] = out.output != *truth;
    bits[i] = out.ledger.total_bits();
  });

  ErrorEstimate est;
  est.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    est.errors += wrong[i];
    est.max_bits = std::max(est.max_bits, bits[i]);
  }
  est.fraction = static_cast<double>(est.errors) / static_cast<double>(trials);
  est.halfwidth = monte_carlo_halfwidth(est.fraction, trials);
  return est;
}

namespace {

class SendInputAlice final : public Strategy {
 public:
  Turn on_turn(PartyContext& ctx, const BitBuffer&) override {
    BitBuffer msg;
    for (std::size_t i = 0; i < ctx.input().size(); ++i) msg.push_bit(ctx.input().test(i));
    return Turn::send(std::move(msg));
  }
};

class SendInputBob final : public Strategy {
 public:
  explicit SendInputBob(std::size_t threshold) : threshold_(threshold) {}
  Turn on_turn(PartyContext& ctx, const BitBuffer& incoming) override {
    const BitString& y = ctx.input();
    if (incoming.size() != y.size()) throw ContractViolation("send-input: message length differs from n");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < y.size(); ++i) mismatches += incoming.bit(i) != y.test(i);
    return Turn::output(mismatches > threshold_ ? 1 : 0);
  }

 private:
  std::size_t threshold_;
};

class SilentStrategy final : public Strategy {
 public:
  Turn on_turn(PartyContext&, const BitBuffer&) override { return Turn::send({}); }
};

class ConstantBob final : public Strategy {
 public:
  explicit ConstantBob(int answer) : answer_(answer) {}
  Turn on_turn(PartyContext&, const BitBuffer&) override { return Turn::output(answer_); }

 private:
  int answer_;
};

}  // namespace

std::unique_ptr<Strategy> SendInputProtocol::make_alice() const { return std::make_unique<SendInputAlice>(); }
std::unique_ptr<Strategy> SendInputProtocol::make_bob() const {
  return std::make_unique<SendInputBob>(threshold_);
}

std::unique_ptr<Strategy> ConstantProtocol::make_alice() const { return std::make_unique<SilentStrategy>(); }
std::unique_ptr<Strategy> ConstantProtocol::make_bob() const { return std::make_unique<ConstantBob>(answer_); }

}  // namespace ghd
