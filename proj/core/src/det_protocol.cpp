#include "ghd/det_protocol.hpp"

#include <cmath>

#include "ghd/ball_volume.hpp"
#include "ghd/errors.hpp"

namespace ghd {

std::size_t det_decision_radius(std::size_t n, std::size_t t) {
  if (t < 1 || t > n) throw InvalidInput("deterministic protocol: need 1 <= t <= n");
  return (t - 1) / 2;
}

DetProtocolParams make_det_params(std::size_t n, std::size_t t) {
  const std::size_t radius = det_decision_radius(n, t);
  auto code = n <= kMaxGreedyLength ? greedy_covering_code(n, radius)
                                    : random_covering_code(n, radius, 0.99);
  return make_det_params(n, t, std::make_shared<const CoveringCode>(std::move(code)));
}

DetProtocolParams make_det_params(std::size_t n, std::size_t t, std::shared_ptr<const CoveringCode> code) {
  const std::size_t radius = det_decision_radius(n, t);
  if (!code) throw InvalidInput("deterministic protocol: missing code");
  if (code->length() != n) throw InvalidInput("deterministic protocol: code length differs from n");
  if (code->radius() != radius) {
    throw InvalidInput("deterministic protocol: code radius must be floor((t-1)/2) = " + std::to_string(radius));
  }
  return DetProtocolParams{n, t, radius, std::move(code)};
}

std::size_t det_cost(const DetProtocolParams& params) noexcept { return params.code->index_width() + 1; }

namespace {

class DetAlice final : public Strategy {
 public:
  explicit DetAlice(const DetProtocolParams& p) : params_(p) {}
  Turn on_turn(PartyContext& ctx, const BitBuffer&) override {
    const NearestCodeword nearest = nearest_codeword(*params_.code, ctx.input());
    BitBuffer msg;
    msg.push_bits(nearest.index, params_.code->index_width());
    return Turn::send(std::move(msg));
  }

 private:
  DetProtocolParams params_;
};

class DetBob final : public Strategy {
 public:
  explicit DetBob(const DetProtocolParams& p) : params_(p) {}
  Turn on_turn(PartyContext& ctx, const BitBuffer& incoming) override {
    const unsigned width = params_.code->index_width();
    if (incoming.size() != width) throw ContractViolation("deterministic protocol: wrong index width");
    BitReader reader(incoming);
    const std::uint64_t index = reader.read_bits(width);
    if (index >= params_.code->size()) throw ContractViolation("deterministic protocol: codeword index out of range");
    const std::size_t d = hamming_distance((*params_.code)[index], ctx.input());
    return Turn::output(d <= params_.decision_radius ? 0 : 1);
  }

 private:
  DetProtocolParams params_;
};

}  // namespace

std::unique_ptr<Strategy> DetProtocol::make_alice() const { return std::make_unique<DetAlice>(params_); }
std::unique_ptr<Strategy> DetProtocol::make_bob() const { return std::make_unique<DetBob>(params_); }

ProtocolOutcome run_det_protocol(const BitString& x, const BitString& y, const DetProtocolParams& params) {
  return run_protocol(DetProtocol(params), x, y, 0);
}

DetBounds det_complexity_bounds(std::size_t n, std::size_t t) {
  const std::size_t decision = det_decision_radius(n, t);
  const double nd = static_cast<double>(n);
  DetBounds b;
  b.lower = nd - log2_ball_volume(n, t / 2);
  b.upper = nd - log2_ball_volume(n, decision) + std::log2(nd) + 2.0;
  return b;
}

}  // namespace ghd
