#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ghd {

/// Append-only bit sequence used for messages on the wire. Bits are stored
/// most-significant-first within each byte; fixed-width integers are written
/// most-significant-bit first.
class BitBuffer {
 public:
  BitBuffer() = default;
  static BitBuffer from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_length);

  std::size_t size() const noexcept { return bits_; }
  bool empty() const noexcept { return bits_ == 0; }
  bool bit(std::size_t i) const;

  void push_bit(bool b);
  /// Low `width` bits of value, MSB first. width <= 64.
  void push_bits(std::uint64_t value, unsigned width);
  void append(const BitBuffer& other);

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  /// Payload as hex, zero-padded at the end to a whole number of nibbles.
  std::string to_hex() const;

  friend bool operator==(const BitBuffer&, const BitBuffer&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const BitBuffer& buffer) noexcept : buffer_(&buffer) {}

  std::size_t remaining() const noexcept { return buffer_->size() - pos_; }
  /// Throws ContractViolation when reading past the end.
  bool read_bit();
  std::uint64_t read_bits(unsigned width);

 private:
  const BitBuffer* buffer_;
  std::size_t pos_ = 0;
};

}  // namespace ghd
