#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ghd/bit_buffer.hpp"
#include "ghd/instance.hpp"
#include "ghd/runtime.hpp"

namespace ghd {

/// Largest n the sketch supports: keeps n^3 exactly representable as a double
/// and every grid index inside a signed 64-bit word.
inline constexpr std::size_t kMaxSketchLength = std::size_t{1} << 17;

/// Derived shape of the one-sided random-projection protocol.
///
/// The padded input (length a*b) is cut into b blocks of length a. Alice
/// projects each block onto its own shared uniform unit vector, rounds the
/// projection to the grid {m / n^3}, and sends the b grid indices as
/// sign-magnitude words. Bob declares "far" iff the squared residual
/// against his own projections exceeds L + 5/n.
struct SketchParams {
  GapParams gap;
  double s = 1.0;
  std::size_t blocks = 0;         // b = ceil(4 n (s/U)^(1/3))
  std::size_t block_length = 0;   // a = ceil(n / b)
  std::size_t padded_length = 0;  // a * b
  double grid_scale = 0.0;        // n^3; grid step is its reciprocal
  unsigned word_width = 0;        // ceil(log2(2 floor(sqrt(a) n^3) + 1)) + 1
  double threshold = 0.0;         // L + 5/n
  bool trivial_mode = false;      // b > n: Alice sends x verbatim
  bool hypothesis_holds = true;   // s >= (L + 10/n)^3 / U^2
};

/// (L + 10/n)^3 / U^2, the smallest s for which the error bound e^{-s} is guaranteed.
double sketch_min_exponent(std::size_t n, std::size_t close_max, std::size_t far_min);

/// Throws InvalidInput for bad (n, L, U, s) and HypothesisViolation when
/// s is below sketch_min_exponent unless `allow_hypothesis_violation`.
SketchParams derive_sketch_params(std::size_t n, std::size_t close_max, std::size_t far_min, double s,
                                  bool allow_hypothesis_violation = false);

/// b * word_width + 1, or n + 1 in trivial mode.
std::size_t sketch_cost(const SketchParams& params) noexcept;

/// Uniform point on the unit sphere in R^dim: normalised standard Gaussians,
/// two stream positions per coordinate, whole vector redrawn if the draw is
/// exactly zero.
std::vector<double> gaussian_unit_vector(std::size_t dim, RandomStream& stream);

/// Nearest grid index round(value * n^3), ties to even. Throws
/// ContractViolation when |value| > sqrt(n).
std::int64_t quantize_projection(double value, std::size_t n);

struct SketchMessage {
  std::vector<std::int64_t> indices;  // r_i = indices[i] / n^3

  friend bool operator==(const SketchMessage&, const SketchMessage&) = default;
};

/// Sign bit (1 = negative) then word_width - 1 magnitude bits, MSB first,
/// one word per block, concatenated.
BitBuffer encode_sketch_message(const SketchMessage& msg, const SketchParams& params);
/// Throws ContractViolation on a wrong length, an out-of-range magnitude, or a negative zero.
SketchMessage decode_sketch_message(const BitBuffer& bits, const SketchParams& params);

/// Alice's side. `stream` must be at the same position Bob will start from.
SketchMessage alice_sketch(const BitString& x, const SketchParams& params, RandomStream& stream);
SketchMessage alice_sketch(const BitString& x, const SketchParams& params, SharedRandomness shared);

struct SketchDecision {
  int output = 0;
  double t_prime = 0.0;
};

SketchDecision bob_decide(const BitString& y, const SketchMessage& msg, const SketchParams& params,
                          RandomStream& stream);
SketchDecision bob_decide(const BitString& y, const SketchMessage& msg, const SketchParams& params,
                          SharedRandomness shared);

/// Audit view of one run: needs both inputs, so it is never used to decide.
struct SketchStatistics {
  double t = 0.0;        // sum_i <alpha_i - beta_i, U_i>^2
  double t_prime = 0.0;  // sum_i (r_i - <beta_i, U_i>)^2
  int decision = 0;      // t_prime > L + 5/n
};

SketchStatistics audit_sketch(const BitString& x, const BitString& y, const SketchParams& params,
                              SharedRandomness shared);

class SketchProtocol final : public Protocol {
 public:
  explicit SketchProtocol(SketchParams params) : params_(params) {}
  std::string name() const override { return "sketch"; }
  std::unique_ptr<Strategy> make_alice() const override;
  std::unique_ptr<Strategy> make_bob() const override;
  std::size_t bit_budget(std::size_t n) const override;
  const SketchParams& params() const noexcept { return params_; }

 private:
  SketchParams params_;
};

}  // namespace ghd
