#pragma once

#include <cstdint>

namespace ghd {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed number `index` of `master`. Used wherever a batch of runs needs
/// independent seeds that do not depend on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

class RandomStream;

/// Public coin: a counter-based pseudorandom sequence. Word p is a pure
/// function of (seed, p), so any number of readers see identical values at
/// identical positions without coordinating.
class SharedRandomness {
 public:
  explicit SharedRandomness(std::uint64_t seed) noexcept : seed_(seed), key_(mix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t word_at(std::uint64_t position) const noexcept {
    return mix64(mix64(position ^ key_) + key_);
  }

  /// A fresh cursor at position 0.
  RandomStream stream() const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
};

/// Sequential reader over a SharedRandomness. Each draw documents how many
/// positions it consumes so two parties that perform the same draws stay aligned.
class RandomStream {
 public:
  explicit RandomStream(SharedRandomness source, std::uint64_t position = 0) noexcept
      : source_(source), position_(position) {}

  std::uint64_t position() const noexcept { return position_; }
  void seek(std::uint64_t position) noexcept { position_ = position; }

  /// One position.
  std::uint64_t next_u64() noexcept { return source_.word_at(position_++); }
  /// One position; uniform on [0, 1) with 53-bit resolution.
  double next_unit() noexcept;
  /// One position; uniform on (0, 1].
  double next_open_unit() noexcept;
  /// Uniform on [0, bound). Unbiased multiply-and-reject: at least one position,
  /// more only on rejection (probability < bound / 2^64).
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Standard normal via Box-Muller, cosine branch only: exactly two positions.
  double next_gaussian() noexcept;
  bool next_bit() noexcept { return next_u64() >> 63; }

 private:
  SharedRandomness source_;
  std::uint64_t position_;
};

inline RandomStream SharedRandomness::stream() const noexcept { return RandomStream(*this); }

}  // namespace ghd
