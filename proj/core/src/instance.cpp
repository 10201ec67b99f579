#include "ghd/instance.hpp"

#include <numeric>
#include <vector>

#include "ghd/errors.hpp"
#include "ghd/shared_randomness.hpp"

namespace ghd {

std::string_view to_string(Promise p) noexcept {
  switch (p) {
    case Promise::Close: return "close";
    case Promise::Far: return "far";
    case Promise::Violated: return "violated";
  }
  return "unknown";
}

void validate(const GapParams& p) {
  if (p.n == 0) throw InvalidInput("gap parameters: n must be positive");
  if (p.close_max >= p.far_min) throw InvalidInput("gap parameters: need L < U");
  if (p.far_min > p.n) throw InvalidInput("gap parameters: need U <= n");
}

Promise classify(const GapParams& p, std::size_t distance) {
  if (distance <= p.close_max) return Promise::Close;
  if (distance >= p.far_min) return Promise::Far;
  return Promise::Violated;
}

std::optional<int> expected_output(Promise p) noexcept {
  switch (p) {
    case Promise::Close: return 0;
    case Promise::Far: return 1;
    case Promise::Violated: return std::nullopt;
  }
  return std::nullopt;
}

GhdInstance::GhdInstance(GapParams params, BitString x, BitString y)
    : params_(params), x_(std::move(x)), y_(std::move(y)), distance_(0), promise_(Promise::Violated) {
  validate(params_);
  if (x_.size() != params_.n || y_.size() != params_.n) {
    throw InvalidInput("GhdInstance: input length differs from n");
  }
  distance_ = hamming_distance(x_, y_);
  promise_ = classify(params_, distance_);
}

BitString random_bit_string(std::size_t n, std::uint64_t seed) {
  BitString x(n);
  RandomStream coins = SharedRandomness(seed).stream();
  for (std::size_t i = 0; i < n; i += 64) {
    const std::uint64_t w = coins.next_u64();
    for (std::size_t k = 0; k < 64 && i + k < n; ++k) {
      if ((w >> k) & 1U) x.set(i + k);
    }
  }
  return x;
}

std::pair<BitString, BitString> random_pair_at_distance(std::size_t n, std::size_t d,
                                                        std::uint64_t seed) {
  if (d > n) throw InvalidInput("random_pair_at_distance: distance exceeds length");
  BitString x = random_bit_string(n, derive_seed(seed, 0));
  BitString y = x;
  // Partial Fisher-Yates: the first d entries end up a uniform d-subset.
  RandomStream coins = SharedRandomness(derive_seed(seed, 1)).stream();
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t j = i + coins.uniform_below(n - i);
    std::swap(positions[i], positions[j]);
    y.flip(positions[i]);
  }
  return {std::move(x), std::move(y)};
}

std::pair<BitString, BitString> random_pair_at_distance(long long n, long long d,
                                                        std::uint64_t seed) {
  if (n <= 0 || d < 0) throw InvalidInput("random_pair_at_distance: negative argument");
  return random_pair_at_distance(static_cast<std::size_t>(n), static_cast<std::size_t>(d), seed);
}

}  // namespace ghd
