#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghd {

/// Fixed-length binary string x_1..x_n packed into 64-bit words.
///
/// Position i (0-based) lives in word i / 64 at bit i % 64. Bits past the
/// logical length are always zero, so word-wise popcount is exact.
class BitString {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  /// All-zero string of length n; n must be >= 1.
  explicit BitString(std::size_t n);

  static BitString ones(std::size_t n);
  /// Parses the textual form: first character is x_1. Only '0'/'1' accepted.
  static BitString from_string(std::string_view text);
  /// Low `n` bits of `value`, position 0 taken from the least significant bit.
  static BitString from_integer(std::size_t n, std::uint64_t value);

  std::size_t size() const noexcept { return n_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const word_type> words() const noexcept { return words_; }

  bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);
  std::size_t count() const noexcept;

  /// Only meaningful for size() <= 64; inverse of from_integer.
  std::uint64_t to_integer() const;

  std::string to_string() const;
  /// Hex of the textual form read as a binary number, ceil(n/4) digits.
  std::string to_hex() const;
  static BitString from_hex(std::size_t n, std::string_view hex);

  BitString complement() const;

  friend bool operator==(const BitString& a, const BitString& b) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) = default;

 private:
  void clear_tail() noexcept;

  std::size_t n_;
  std::vector<word_type> words_;
};

/// Number of positions where x and y differ. Throws InvalidInput on length mismatch.
std::size_t hamming_distance(const BitString& x, const BitString& y);

}  // namespace ghd
