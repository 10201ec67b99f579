#include "ghd/sampling.hpp"

#include <cmath>
#include <limits>

#include "ghd/errors.hpp"
#include "numeric.hpp"

namespace ghd {

SamplingParams derive_sampling_params(std::size_t n, std::size_t close_max, std::size_t far_min, double s,
                                      SamplingRule rule, double rate_constant) {
  SamplingParams p;
  p.gap = GapParams{n, close_max, far_min};
  validate(p.gap);
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("sampling: s must be positive");
  if (rule == SamplingRule::AsymptoticRate && !(rate_constant > 0.0)) {
    throw InvalidInput("sampling: rate constant must be positive");
  }
  p.s = s;
  p.rule = rule;
  p.rate_constant = rate_constant;

  const double gap = static_cast<double>(far_min - close_max);
  const double nd = static_cast<double>(n);
  const double raw = rule == SamplingRule::Hoeffding
                         ? 2.0 * s * nd * nd / (gap * gap)
                         : rate_constant * s * nd * static_cast<double>(far_min) / (gap * gap);
  const double m = detail::tolerant_ceil(raw);
  if (m > static_cast<double>(std::numeric_limits<std::size_t>::max() / 4)) {
    throw InvalidInput("sampling: trial count overflows");
  }
  p.trials = std::max<std::size_t>(1, static_cast<std::size_t>(m));
  p.threshold = static_cast<double>(close_max + far_min) / (2.0 * nd);
  return p;
}

std::vector<std::size_t> sampled_indices(const SamplingParams& params, std::uint64_t seed) {
  RandomStream coins = SharedRandomness(seed).stream();
  std::vector<std::size_t> out(params.trials);
  for (auto& i : out) i = coins.uniform_below(params.gap.n);
  return out;
}

std::size_t count_sample_mismatches(const BitString& x, const BitString& y, const SamplingParams& params,
                                    std::uint64_t seed) {
  std::size_t mismatches = 0;
  for (std::size_t i : sampled_indices(params, seed)) mismatches += x.test(i) != y.test(i);
  return mismatches;
}

int sampling_decision(std::size_t mismatches, const SamplingParams& params) noexcept {
  using wide = detail::u128;
  const wide lhs = wide{mismatches} * params.gap.n * 2;
  const wide rhs = wide{params.trials} * (params.gap.close_max + params.gap.far_min);
  return lhs > rhs ? 1 : 0;
}

namespace {

class SamplingAlice final : public Strategy {
 public:
  explicit SamplingAlice(const SamplingParams& p) : params_(p) {}
  Turn on_turn(PartyContext& ctx, const BitBuffer&) override {
    const BitString& x = ctx.input();
    if (x.size() != params_.gap.n) throw ContractViolation("sampling: input length differs from n");
    BitBuffer msg;
    for (std::size_t k = 0; k < params_.trials; ++k) msg.push_bit(x.test(ctx.coins().uniform_below(params_.gap.n)));
    return Turn::send(std::move(msg));
  }

 private:
  SamplingParams params_;
};

class SamplingBob final : public Strategy {
 public:
  explicit SamplingBob(const SamplingParams& p) : params_(p) {}
  Turn on_turn(PartyContext& ctx, const BitBuffer& incoming) override {
    const BitString& y = ctx.input();
    if (incoming.size() != params_.trials) throw ContractViolation("sampling: expected one bit per trial");
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < params_.trials; ++k) {
      mismatches += incoming.bit(k) != y.test(ctx.coins().uniform_below(params_.gap.n));
    }
    return Turn::output(sampling_decision(mismatches, params_));
  }

 private:
  SamplingParams params_;
};

}  // namespace

std::unique_ptr<Strategy> SamplingProtocol::make_alice() const { return std::make_unique<SamplingAlice>(params_); }
std::unique_ptr<Strategy> SamplingProtocol::make_bob() const { return std::make_unique<SamplingBob>(params_); }

std::size_t SamplingProtocol::bit_budget(std::size_t n) const {
  return std::max(default_bit_budget(n), sampling_cost(params_));
}

ProtocolOutcome run_sampling_protocol(const BitString& x, const BitString& y, const SamplingParams& params,
                                      SharedRandomness shared) {
  SamplingProtocol protocol(params);
  auto alice = protocol.make_alice();
  auto bob = protocol.make_bob();
  RunOptions options;
  options.bit_budget = protocol.bit_budget(x.size());
  return run_protocol(*alice, *bob, x, y, shared, options);
}

}  // namespace ghd
