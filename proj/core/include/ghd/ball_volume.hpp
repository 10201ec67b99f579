#pragma once

#include <cstddef>
#include <string>

#include <gmpxx.h>

namespace ghd {

/// Exact size of a Hamming ball, V(n, r) = sum_{i <= r} C(n, i).
struct BallVolume {
  std::size_t n = 0;
  std::size_t r = 0;
  mpz_class value;

  std::string to_string() const { return value.get_str(); }
  double log2() const;
};

/// Exact binomial coefficient C(n, k); zero when k > n.
mpz_class binomial(std::size_t n, std::size_t k);

/// Throws InvalidInput unless 0 <= r <= n.
BallVolume ball_volume(std::size_t n, std::size_t r);
/// Signed overload so negative radii from callers are rejected rather than wrapped.
BallVolume ball_volume(long long n, long long r);

/// log2 of the exact volume.
double log2_ball_volume(std::size_t n, std::size_t r);

/// log2 of a positive big integer: bit length plus a correction from its
/// leading 53 significant bits. Throws InvalidInput for values <= 0.
double log2_exact(const mpz_class& value);

/// ceil(log2(value)) for value >= 1, computed exactly.
std::size_t ceil_log2_exact(const mpz_class& value);

}  // namespace ghd
