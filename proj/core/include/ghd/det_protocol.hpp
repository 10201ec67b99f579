#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "ghd/covering_code.hpp"
#include "ghd/runtime.hpp"

namespace ghd {

/// Deterministic protocol for "x = y or H(x, y) >= t": Alice sends the index
/// of her nearest codeword c, Bob answers 0 iff H(c, y) <= floor((t-1)/2).
struct DetProtocolParams {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t decision_radius = 0;  // floor((t - 1) / 2)
  std::shared_ptr<const CoveringCode> code;
};

/// floor((t - 1) / 2); throws InvalidInput unless 1 <= t <= n.
std::size_t det_decision_radius(std::size_t n, std::size_t t);

/// Builds the greedy code for n <= kMaxGreedyLength, otherwise a random code
/// at 0.99 confidence.
DetProtocolParams make_det_params(std::size_t n, std::size_t t);
/// Throws InvalidInput unless the code has length n and radius floor((t-1)/2).
DetProtocolParams make_det_params(std::size_t n, std::size_t t, std::shared_ptr<const CoveringCode> code);

/// index_width + 1.
std::size_t det_cost(const DetProtocolParams& params) noexcept;

class DetProtocol final : public Protocol {
 public:
  explicit DetProtocol(DetProtocolParams params) : params_(std::move(params)) {}
  std::string name() const override { return "deterministic"; }
  std::unique_ptr<Strategy> make_alice() const override;
  std::unique_ptr<Strategy> make_bob() const override;
  const DetProtocolParams& params() const noexcept { return params_; }

 private:
  DetProtocolParams params_;
};

ProtocolOutcome run_det_protocol(const BitString& x, const BitString& y, const DetProtocolParams& params);

struct DetBounds {
  double lower = 0.0;  // n - log2 V(n, floor(t/2))
  double upper = 0.0;  // n - log2 V(n, floor((t-1)/2)) + log2 n + 2
};

/// Window for the deterministic complexity of the (0, t) gap problem. The
/// upper end carries the greedy construction's constants; see README.
DetBounds det_complexity_bounds(std::size_t n, std::size_t t);

}  // namespace ghd
