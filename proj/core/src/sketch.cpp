#include "ghd/sketch.hpp"

#include <cmath>

#include <gmpxx.h>

#include "ghd/ball_volume.hpp"
#include "ghd/errors.hpp"
#include "numeric.hpp"

namespace ghd {

namespace {

// floor(sqrt(a) * n^3), exactly.
mpz_class scaled_projection_bound(std::size_t a, std::size_t n) {
  mpz_class n3 = n;
  n3 = n3 * n3 * n3;
  mpz_class radicand = n3 * n3 * static_cast<unsigned long>(a);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  return root;
}

// <block `i` of bits, unit>; positions past n are the zero padding.
double block_projection(const BitString& bits, std::size_t block, std::size_t a, const std::vector<double>& unit) {
  const std::size_t start = block * a;
  const std::size_t stop = std::min(start + a, bits.size());
  double acc = 0.0;
  for (std::size_t j = start; j < stop; ++j) {
    if (bits.test(j)) acc += unit[j - start];
  }
  return acc;
}

void check_input(const BitString& v, const SketchParams& params) {
  if (v.size() != params.gap.n) throw ContractViolation("sketch: input length differs from n");
  if (params.trivial_mode) throw ContractViolation("sketch: parameters are in trivial mode");
}

}  // namespace

double sketch_min_exponent(std::size_t n, std::size_t close_max, std::size_t far_min) {
  const double base = static_cast<double>(close_max) + 10.0 / static_cast<double>(n);
  const double u = static_cast<double>(far_min);
  return base * base * base / (u * u);
}

SketchParams derive_sketch_params(std::size_t n, std::size_t close_max, std::size_t far_min, double s,
                                  bool allow_hypothesis_violation) {
  SketchParams p;
  p.gap = GapParams{n, close_max, far_min};
  validate(p.gap);
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("sketch: s must be positive");
  if (n > kMaxSketchLength) throw SizeLimitExceeded("sketch: n exceeds the supported maximum");
  p.s = s;

  p.hypothesis_holds = s >= sketch_min_exponent(n, close_max, far_min);
  if (!p.hypothesis_holds && !allow_hypothesis_violation) {
    throw HypothesisViolation("sketch: s = " + std::to_string(s) + " is below (L + 10/n)^3 / U^2 = " +
                              std::to_string(sketch_min_exponent(n, close_max, far_min)));
  }

  const double nd = static_cast<double>(n);
  const double raw_blocks = detail::tolerant_ceil(4.0 * nd * std::cbrt(s / static_cast<double>(far_min)));
  p.threshold = static_cast<double>(close_max) + 5.0 / nd;
  p.grid_scale = nd * nd * nd;

  if (raw_blocks > nd) {
    p.trivial_mode = true;
    p.blocks = static_cast<std::size_t>(std::min(raw_blocks, 1e18));
    p.block_length = 1;
    p.padded_length = n;
    p.word_width = 0;
    return p;
  }

  p.blocks = static_cast<std::size_t>(raw_blocks);
  p.block_length = (n + p.blocks - 1) / p.blocks;
  p.padded_length = p.block_length * p.blocks;
  const mpz_class bound = scaled_projection_bound(p.block_length, n);
  p.word_width = static_cast<unsigned>(ceil_log2_exact(2 * bound + 1)) + 1;
  return p;
}

std::size_t sketch_cost(const SketchParams& params) noexcept {
  if (params.trivial_mode) return SendInputProtocol::cost(params.gap.n);
  return params.blocks * params.word_width + 1;
}

std::vector<double> gaussian_unit_vector(std::size_t dim, RandomStream& stream) {
  if (dim == 0) throw InvalidInput("gaussian_unit_vector: dimension must be positive");
  std::vector<double> v(dim);
  for (;;) {
    double norm2 = 0.0;
    for (auto& z : v) {
      z = stream.next_gaussian();
      norm2 += z * z;
    }
    if (norm2 > 0.0) {
      const double norm = std::sqrt(norm2);
      for (auto& z : v) z /= norm;
      return v;
    }
  }
}

std::int64_t quantize_projection(double value, std::size_t n) {
  if (n == 0) throw InvalidInput("quantize_projection: n must be positive");
  const double nd = static_cast<double>(n);
  if (!std::isfinite(value) || std::fabs(value) > std::sqrt(nd) * (1.0 + 1e-12)) {
    throw ContractViolation("quantize_projection: |value| exceeds sqrt(n)");
  }
  return static_cast<std::int64_t>(std::nearbyint(value * nd * nd * nd));
}

BitBuffer encode_sketch_message(const SketchMessage& msg, const SketchParams& params) {
  if (msg.indices.size() != params.blocks) throw ContractViolation("sketch message: wrong number of blocks");
  const unsigned magnitude_bits = params.word_width - 1;
  const std::uint64_t max_magnitude = (std::uint64_t{1} << magnitude_bits) - 1;
  BitBuffer out;
  for (const std::int64_t m : msg.indices) {
    const std::uint64_t magnitude = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
    if (magnitude > max_magnitude) throw ContractViolation("sketch message: index exceeds word width");
    out.push_bit(m < 0);
    out.push_bits(magnitude, magnitude_bits);
  }
  return out;
}

SketchMessage decode_sketch_message(const BitBuffer& bits, const SketchParams& params) {
  if (bits.size() != params.blocks * params.word_width) {
    throw ContractViolation("sketch message: wrong bit length");
  }
  BitReader reader(bits);
  SketchMessage msg;
  msg.indices.reserve(params.blocks);
  for (std::size_t i = 0; i < params.blocks; ++i) {
    const bool negative = reader.read_bit();
    const auto magnitude = static_cast<std::int64_t>(reader.read_bits(params.word_width - 1));
    if (negative && magnitude == 0) throw ContractViolation("sketch message: negative zero");
    msg.indices.push_back(negative ? -magnitude : magnitude);
  }
  return msg;
}

SketchMessage alice_sketch(const BitString& x, const SketchParams& params, RandomStream& stream) {
  check_input(x, params);
  SketchMessage msg;
  msg.indices.reserve(params.blocks);
  for (std::size_t i = 0; i < params.blocks; ++i) {
    const auto unit = gaussian_unit_vector(params.block_length, stream);
    msg.indices.push_back(quantize_projection(block_projection(x, i, params.block_length, unit), params.gap.n));
  }
  return msg;
}

SketchMessage alice_sketch(const BitString& x, const SketchParams& params, SharedRandomness shared) {
  RandomStream stream = shared.stream();
  return alice_sketch(x, params, stream);
}

SketchDecision bob_decide(const BitString& y, const SketchMessage& msg, const SketchParams& params,
                          RandomStream& stream) {
  check_input(y, params);
  if (msg.indices.size() != params.blocks) throw ContractViolation("sketch message: wrong number of blocks");
  SketchDecision d;
  for (std::size_t i = 0; i < params.blocks; ++i) {
    const auto unit = gaussian_unit_vector(params.block_length, stream);
    const double r = static_cast<double>(msg.indices[i]) / params.grid_scale;
    const double residual = r - block_projection(y, i, params.block_length, unit);
    d.t_prime += residual * residual;
  }
  d.output = d.t_prime > params.threshold ? 1 : 0;
  return d;
}

SketchDecision bob_decide(const BitString& y, const SketchMessage& msg, const SketchParams& params,
                          SharedRandomness shared) {
  RandomStream stream = shared.stream();
  return bob_decide(y, msg, params, stream);
}

SketchStatistics audit_sketch(const BitString& x, const BitString& y, const SketchParams& params,
                              SharedRandomness shared) {
  check_input(x, params);
  check_input(y, params);
  const SketchMessage msg = alice_sketch(x, params, shared);
  const SketchDecision bob = bob_decide(y, msg, params, shared);

  SketchStatistics stats;
  stats.t_prime = bob.t_prime;
  stats.decision = bob.output;
  RandomStream stream = shared.stream();
  for (std::size_t i = 0; i < params.blocks; ++i) {
    const auto unit = gaussian_unit_vector(params.block_length, stream);
    const double q = block_projection(x, i, params.block_length, unit) - block_projection(y, i, params.block_length, unit);
    stats.t += q * q;
  }
  return stats;
}

namespace {

class SketchAlice final : public Strategy {
 public:
  explicit SketchAlice(const SketchParams& p) : params_(p) {}
  Turn on_turn(PartyContext& ctx, const BitBuffer&) override {
    return Turn::send(encode_sketch_message(alice_sketch(ctx.input(), params_, ctx.coins()), params_));
  }

 private:
  SketchParams params_;
};

class SketchBob final : public Strategy {
 public:
  explicit SketchBob(const SketchParams& p) : params_(p) {}
  Turn on_turn(PartyContext& ctx, const BitBuffer& incoming) override {
    const SketchMessage msg = decode_sketch_message(incoming, params_);
    return Turn::output(bob_decide(ctx.input(), msg, params_, ctx.coins()).output);
  }

 private:
  SketchParams params_;
};

}  // namespace

std::unique_ptr<Strategy> SketchProtocol::make_alice() const {
  if (params_.trivial_mode) return SendInputProtocol(params_.gap.close_max).make_alice();
  return std::make_unique<SketchAlice>(params_);
}

std::unique_ptr<Strategy> SketchProtocol::make_bob() const {
  if (params_.trivial_mode) return SendInputProtocol(params_.gap.close_max).make_bob();
  return std::make_unique<SketchBob>(params_);
}

std::size_t SketchProtocol::bit_budget(std::size_t n) const {
  return std::max(default_bit_budget(n), sketch_cost(params_));
}

}  // namespace ghd
