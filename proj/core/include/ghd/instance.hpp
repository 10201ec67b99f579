#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "ghd/bit_string.hpp"

namespace ghd {

enum class Promise { Close, Far, Violated };

std::string_view to_string(Promise p) noexcept;

/// Gap parameters: Close means H <= close_max, Far means H >= far_min.
struct GapParams {
  std::size_t n = 0;
  std::size_t close_max = 0;  // L
  std::size_t far_min = 0;    // U
};

/// Throws InvalidInput unless n >= 1 and L < U <= n.
void validate(const GapParams& p);

Promise classify(const GapParams& p, std::size_t distance);

/// Correct protocol output for a promise class; empty for Violated.
std::optional<int> expected_output(Promise p) noexcept;

/// A GHD input pair together with its parameters and promise class.
class GhdInstance {
 public:
  GhdInstance(GapParams params, BitString x, BitString y);

  const GapParams& params() const noexcept { return params_; }
  std::size_t n() const noexcept { return params_.n; }
  const BitString& x() const noexcept { return x_; }
  const BitString& y() const noexcept { return y_; }
  std::size_t distance() const noexcept { return distance_; }
  Promise promise() const noexcept { return promise_; }

 private:
  GapParams params_;
  BitString x_;
  BitString y_;
  std::size_t distance_;
  Promise promise_;
};

/// x uniform on {0,1}^n, y = x with a uniformly chosen d-subset flipped.
/// Deterministic in `seed`. Throws InvalidInput if d > n.
std::pair<BitString, BitString> random_pair_at_distance(std::size_t n, std::size_t d,
                                                        std::uint64_t seed);
std::pair<BitString, BitString> random_pair_at_distance(long long n, long long d,
                                                        std::uint64_t seed);

/// Uniform random string of length n.
BitString random_bit_string(std::size_t n, std::uint64_t seed);

}  // namespace ghd
