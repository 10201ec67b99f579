#include "ghd/streaming.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ghd/ball_volume.hpp"
#include "ghd/errors.hpp"
#include "ghd/instance.hpp"
#include "ghd/shared_randomness.hpp"
#include "numeric.hpp"

namespace ghd {

namespace {

TokenStream encode_one(const BitString& bits) {
  const std::size_t n = bits.size();
  TokenStream s{2 * n, {}};
  s.tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.tokens.push_back((bits.test(i) ? n : 0) + i + 1);
  return s;
}

void check_token(std::uint64_t token, std::size_t universe) {
  if (token < 1 || token > universe) throw InvalidInput("token outside the universe");
}

StateSnapshot pack_bits(const std::vector<bool>& bits, std::uint64_t tail, unsigned tail_width) {
  BitBuffer buf;
  for (bool b : bits) buf.push_bit(b);
  buf.push_bits(tail, tail_width);
  return StateSnapshot{{buf.bytes().begin(), buf.bytes().end()}, buf.size()};
}

BitBuffer to_buffer(const StateSnapshot& s) { return BitBuffer::from_bytes(s.bytes, s.bit_length); }

StateSnapshot to_snapshot(const BitBuffer& b) { return StateSnapshot{{b.bytes().begin(), b.bytes().end()}, b.size()}; }

}  // namespace

std::pair<TokenStream, TokenStream> encode_streams(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw InvalidInput("encode_streams: length mismatch");
  return {encode_one(x), encode_one(y)};
}

TokenStream concat(const TokenStream& a, const TokenStream& b) {
  TokenStream out{std::max(a.universe, b.universe), a.tokens};
  out.tokens.insert(out.tokens.end(), b.tokens.begin(), b.tokens.end());
  return out;
}

std::size_t exact_f0(const TokenStream& stream) {
  std::vector<bool> seen(stream.universe + 1, false);
  std::size_t distinct = 0;
  for (const std::uint64_t token : stream.tokens) {
    check_token(token, stream.universe);
    if (!seen[token]) {
      seen[token] = true;
      ++distinct;
    }
  }
  return distinct;
}

std::string format_token_stream(const TokenStream& stream) {
  std::ostringstream out;
  for (const std::uint64_t token : stream.tokens) out << token << '\n';
  return out.str();
}

TokenStream parse_token_stream(std::string_view text, std::size_t universe) {
  TokenStream s{universe, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::uint64_t token = 0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), token);
    if (ec != std::errc{} || end != line.data() + line.size()) throw InvalidInput("malformed token line: " + line);
    check_token(token, universe);
    s.tokens.push_back(token);
  }
  return s;
}

ExactBitmapF0::ExactBitmapF0(std::size_t universe, std::size_t passes)
    : universe_(universe), passes_(passes), seen_(universe, false) {
  if (universe == 0 || passes == 0) throw InvalidInput("exact bitmap: universe and passes must be positive");
}

void ExactBitmapF0::consume(std::uint64_t token) {
  check_token(token, universe_);
  seen_[token - 1] = true;
}

StateSnapshot ExactBitmapF0::snapshot() const { return pack_bits(seen_, 0, 0); }

void ExactBitmapF0::restore(const StateSnapshot& state) {
  if (state.bit_length != universe_) throw ContractViolation("exact bitmap: snapshot has the wrong size");
  const BitBuffer buf = to_buffer(state);
  for (std::size_t i = 0; i < universe_; ++i) seen_[i] = buf.bit(i);
}

std::uint64_t ExactBitmapF0::estimate() const {
  return static_cast<std::uint64_t>(std::count(seen_.begin(), seen_.end(), true));
}

TruncatedBitmapF0::TruncatedBitmapF0(std::size_t universe, std::size_t capacity, std::size_t passes)
    : universe_(universe), capacity_(capacity), passes_(passes), seen_(capacity, false) {
  if (universe == 0 || passes == 0) throw InvalidInput("truncated bitmap: universe and passes must be positive");
  if (capacity > universe) throw InvalidInput("truncated bitmap: capacity exceeds the universe");
}

unsigned TruncatedBitmapF0::counter_width() const noexcept {
  // Enough for every occurrence over all passes.
  return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(universe_ * passes_)));
}

void TruncatedBitmapF0::consume(std::uint64_t token) {
  check_token(token, universe_);
  if (token <= capacity_) {
    seen_[token - 1] = true;
  } else {
    ++overflow_;
  }
}

StateSnapshot TruncatedBitmapF0::snapshot() const { return pack_bits(seen_, overflow_, counter_width()); }

void TruncatedBitmapF0::restore(const StateSnapshot& state) {
  if (state.bit_length != capacity_ + counter_width()) {
    throw ContractViolation("truncated bitmap: snapshot has the wrong size");
  }
  const BitBuffer buf = to_buffer(state);
  BitReader reader(buf);
  for (std::size_t i = 0; i < capacity_; ++i) seen_[i] = reader.read_bit();
  overflow_ = reader.read_bits(counter_width());
}

std::uint64_t TruncatedBitmapF0::estimate() const {
  return static_cast<std::uint64_t>(std::count(seen_.begin(), seen_.end(), true)) + overflow_;
}

std::size_t reduction_gap(std::size_t n, double c) {
  if (!(c > 1.0 && c < 2.0)) throw InvalidInput("approximation factor c must lie in (1, 2)");
  if (n == 0) throw InvalidInput("n must be positive");
  const double t = detail::tolerant_ceil(static_cast<double>(n) * (c - 1.0));
  return std::clamp<std::size_t>(static_cast<std::size_t>(t), 1, n);
}

namespace {

struct HandoffLog {
  std::size_t max_bits = 0;
  std::size_t handoffs = 0;
  std::uint64_t estimate = 0;

  void record(const StateSnapshot& s) {
    max_bits = std::max(max_bits, s.bit_length);
    ++handoffs;
  }
};

class StreamingAlice final : public Strategy {
 public:
  StreamingAlice(const AlgorithmFactory& factory, HandoffLog& log) : factory_(factory), log_(log) {}

  Turn on_turn(PartyContext& ctx, const BitBuffer& incoming) override {
    if (!algorithm_) {
      algorithm_ = factory_();
      if (!algorithm_) throw ContractViolation("streaming: factory returned no algorithm");
    } else {
      algorithm_->restore(to_snapshot(incoming));
    }
    if (pass_ >= algorithm_->passes()) throw ContractViolation("streaming: Alice asked to run past the last pass");
    algorithm_->begin_pass(pass_++);
    for (const std::uint64_t token : encode_one(ctx.input()).tokens) algorithm_->consume(token);
    const StateSnapshot state = algorithm_->snapshot();
    log_.record(state);
    return Turn::send(to_buffer(state));
  }

 private:
  const AlgorithmFactory& factory_;
  HandoffLog& log_;
  std::unique_ptr<StreamingAlgorithm> algorithm_;
  std::size_t pass_ = 0;
};

class StreamingBob final : public Strategy {
 public:
  StreamingBob(const AlgorithmFactory& factory, std::size_t t, HandoffLog& log)
      : factory_(factory), t_(t), log_(log) {}

  Turn on_turn(PartyContext& ctx, const BitBuffer& incoming) override {
    if (!algorithm_) {
      algorithm_ = factory_();
      if (!algorithm_) throw ContractViolation("streaming: factory returned no algorithm");
    }
    algorithm_->restore(to_snapshot(incoming));
    for (const std::uint64_t token : encode_one(ctx.input()).tokens) algorithm_->consume(token);
    if (++pass_ < algorithm_->passes()) {
      const StateSnapshot state = algorithm_->snapshot();
      log_.record(state);
      return Turn::send(to_buffer(state));
    }
    log_.estimate = algorithm_->estimate();
    return Turn::output(log_.estimate < ctx.input().size() + t_ ? 0 : 1);
  }

 private:
  const AlgorithmFactory& factory_;
  std::size_t t_;
  HandoffLog& log_;
  std::unique_ptr<StreamingAlgorithm> algorithm_;
  std::size_t pass_ = 0;
};

struct RawRun {
  ProtocolOutcome outcome;
  HandoffLog log;
  std::size_t passes = 0;
};

RawRun run_reduction_once(const AlgorithmFactory& factory, std::size_t t, const BitString& x, const BitString& y) {
  RawRun raw;
  raw.passes = factory()->passes();
  StreamingAlice alice(factory, raw.log);
  StreamingBob bob(factory, t, raw.log);
  RunOptions options;
  options.bit_budget = std::max(default_bit_budget(x.size()), std::size_t{1} << 32);
  raw.outcome = run_protocol(alice, bob, x, y, SharedRandomness(0), options);
  return raw;
}

}  // namespace

StreamingDecision ghd_via_streaming(const AlgorithmFactory& factory, double c, const BitString& x,
                                    const BitString& y) {
  if (!factory) throw InvalidInput("ghd_via_streaming: missing algorithm factory");
  if (x.size() != y.size()) throw InvalidInput("ghd_via_streaming: length mismatch");
  const std::size_t n = x.size();
  const std::size_t t = reduction_gap(n, c);

  const RawRun first = run_reduction_once(factory, t, x, y);
  const RawRun second = run_reduction_once(factory, t, x, y);
  if (!(first.outcome.ledger == second.outcome.ledger) || first.log.estimate != second.log.estimate ||
      first.outcome.output != second.outcome.output) {
    throw ContractViolation("ghd_via_streaming: algorithm is not deterministic");
  }

  StreamingDecision d;
  d.output = first.outcome.output;
  ReductionRun& run = d.run;
  run.n = n;
  run.c = c;
  run.t = t;
  run.distance = hamming_distance(x, y);
  const auto [u, v] = encode_streams(x, y);
  run.f0 = exact_f0(concat(u, v));
  run.estimate = first.log.estimate;
  run.passes = first.passes;
  run.state_bits = first.log.max_bits;
  run.handoffs = first.log.handoffs;
  run.communication = first.outcome.ledger.total_bits();
  run.ledger = first.outcome.ledger;
  return d;
}

SpaceBound space_lower_bound(std::size_t n, double c, std::size_t p) {
  if (p == 0) throw InvalidInput("space_lower_bound: p must be at least 1");
  SpaceBound b;
  b.t = reduction_gap(n, c);
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  b.precursor = (nd - log2_ball_volume(n, b.t / 2)) / (2.0 * pd);
  b.asymptotic = nd * (2.0 - c) * (2.0 - c) / pd;
  return b;
}

FalsificationReport falsify_streaming(const AlgorithmFactory& factory, std::size_t n, double c,
                                      std::size_t trials, std::uint64_t seed) {
  const std::size_t t = reduction_gap(n, c);
  FalsificationReport report;
  report.communication_floor = static_cast<double>(n) - log2_ball_volume(n, t / 2);

  for (std::size_t k = 0; k < 2 * trials; ++k) {
    const bool far = k % 2 == 1;
    const std::uint64_t pair_seed = derive_seed(seed, k);
    std::size_t d = 0;
    if (far) d = t + SharedRandomness(pair_seed).stream().uniform_below(n - t + 1);
    auto [x, y] = random_pair_at_distance(n, d, derive_seed(pair_seed, 1));
    const StreamingDecision decision = ghd_via_streaming(factory, c, x, y);
    ++report.pairs_tried;
    report.max_communication = std::max(report.max_communication, decision.run.communication);
    if (decision.output != (far ? 1 : 0)) {
      report.counterexample.emplace(std::move(x), std::move(y));
      break;
    }
  }
  report.must_err = static_cast<double>(report.max_communication) < report.communication_floor;
  return report;
}

}  // namespace ghd
