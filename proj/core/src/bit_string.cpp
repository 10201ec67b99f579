#include "ghd/bit_string.hpp"

#include <bit>

#include "ghd/errors.hpp"

namespace ghd {

namespace {

std::size_t words_for(std::size_t n) { return (n + BitString::kWordBits - 1) / BitString::kWordBits; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(std::size_t n) : n_(n), words_(words_for(n), 0) {
  if (n == 0) throw InvalidInput("BitString length must be at least 1");
}

BitString BitString::ones(std::size_t n) {
  BitString s(n);
  for (auto& w : s.words_) w = ~word_type{0};
  s.clear_tail();
  return s;
}

BitString BitString::from_string(std::string_view text) {
  BitString s(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      s.set(i);
    } else if (text[i] != '0') {
      throw InvalidInput("bit string may only contain '0' and '1'");
    }
  }
  return s;
}

BitString BitString::from_integer(std::size_t n, std::uint64_t value) {
  if (n > kWordBits) throw InvalidInput("from_integer supports at most 64 bits");
  BitString s(n);
  s.words_[0] = value;
  s.clear_tail();
  return s;
}

bool BitString::test(std::size_t i) const {
  if (i >= n_) throw InvalidInput("bit index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= n_) throw InvalidInput("bit index out of range");
  const word_type mask = word_type{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitString::flip(std::size_t i) {
  if (i >= n_) throw InvalidInput("bit index out of range");
  words_[i / kWordBits] ^= word_type{1} << (i % kWordBits);
}

std::size_t BitString::count() const noexcept {
  std::size_t total = 0;
  for (word_type w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::uint64_t BitString::to_integer() const {
  if (n_ > kWordBits) throw InvalidInput("to_integer supports at most 64 bits");
  return words_[0];
}

std::string BitString::to_string() const {
  std::string out(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (n_ + 3) / 4;
  const std::size_t pad = digits * 4 - n_;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    int v = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t textual = d * 4 + k;
      v <<= 1;
      if (textual >= pad && test(textual - pad)) v |= 1;
    }
    out[d] = kDigits[v];
  }
  return out;
}

BitString BitString::from_hex(std::size_t n, std::string_view hex) {
  const std::size_t digits = (n + 3) / 4;
  if (hex.size() != digits) throw InvalidInput("hex row has wrong number of digits");
  const std::size_t pad = digits * 4 - n;
  BitString s(n);
  for (std::size_t d = 0; d < digits; ++d) {
    const int v = hex_value(hex[d]);
    if (v < 0) throw InvalidInput("invalid hex digit");
    for (std::size_t k = 0; k < 4; ++k) {
      const bool bit = (v >> (3 - k)) & 1;
      const std::size_t textual = d * 4 + k;
      if (textual < pad) {
        if (bit) throw InvalidInput("hex row sets bits beyond the string length");
        continue;
      }
      if (bit) s.set(textual - pad);
    }
  }
  return s;
}

BitString BitString::complement() const {
  BitString s(*this);
  for (auto& w : s.words_) w = ~w;
  s.clear_tail();
  return s;
}

void BitString::clear_tail() noexcept {
  const std::size_t rem = n_ % kWordBits;
  if (rem != 0) words_.back() &= (word_type{1} << rem) - 1;
}

std::size_t hamming_distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw InvalidInput("hamming_distance: length mismatch");
  const auto xs = x.words();
  const auto ys = y.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(xs[i] ^ ys[i]));
  }
  return total;
}

}  // namespace ghd
