#include "ghd/ball_volume.hpp"

#include <cmath>

#include "ghd/errors.hpp"

namespace ghd {

namespace {

// Sum of C(n, i) for i in [0, r], r < n.
mpz_class partial_binomial_sum(std::size_t n, std::size_t r) {
  mpz_class term = 1;
  mpz_class sum = 1;
  for (std::size_t i = 0; i < r; ++i) {
    mpz_mul_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(n - i));
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(i + 1));
    sum += term;
  }
  return sum;
}

}  // namespace

double BallVolume::log2() const { return log2_exact(value); }

mpz_class binomial(std::size_t n, std::size_t k) {
  mpz_class out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BallVolume ball_volume(std::size_t n, std::size_t r) {
  if (r > n) throw InvalidInput("ball_volume: radius exceeds length");
  BallVolume v{n, r, {}};
  if (r == n) {
    mpz_ui_pow_ui(v.value.get_mpz_t(), 2, static_cast<unsigned long>(n));
  } else if (2 * r < n) {
    v.value = partial_binomial_sum(n, r);
  } else {
    // V(n, r) = 2^n - V(n, n - r - 1), shorter sum for large radii.
    mpz_class whole;
    mpz_ui_pow_ui(whole.get_mpz_t(), 2, static_cast<unsigned long>(n));
    v.value = whole - partial_binomial_sum(n, n - r - 1);
  }
  return v;
}

BallVolume ball_volume(long long n, long long r) {
  if (n < 0 || r < 0) throw InvalidInput("ball_volume: negative argument");
  return ball_volume(static_cast<std::size_t>(n), static_cast<std::size_t>(r));
}

double log2_ball_volume(std::size_t n, std::size_t r) { return ball_volume(n, r).log2(); }

double log2_exact(const mpz_class& value) {
  if (sgn(value) <= 0) throw InvalidInput("log2_exact: value must be positive");
  long exponent = 0;
  // mantissa in [0.5, 1), value = mantissa * 2^exponent (mantissa truncated to a double).
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return static_cast<double>(exponent) + std::log2(mantissa);
}

std::size_t ceil_log2_exact(const mpz_class& value) {
  if (sgn(value) <= 0) throw InvalidInput("ceil_log2_exact: value must be positive");
  if (value == 1) return 0;
  mpz_class below = value - 1;
  return mpz_sizeinbase(below.get_mpz_t(), 2);
}

}  // namespace ghd
