#include "ghd/bit_buffer.hpp"

#include "ghd/errors.hpp"

namespace ghd {

BitBuffer BitBuffer::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_length) {
  if (bit_length > bytes.size() * 8) throw InvalidInput("bit length exceeds byte payload");
  BitBuffer out;
  for (std::size_t i = 0; i < bit_length; ++i) {
    out.push_bit((bytes[i / 8] >> (7 - i % 8)) & 1U);
  }
  return out;
}

bool BitBuffer::bit(std::size_t i) const {
  if (i >= bits_) throw InvalidInput("bit index out of range");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1U;
}

void BitBuffer::push_bit(bool b) {
  if (bits_ % 8 == 0) bytes_.push_back(0);
  if (b) bytes_.back() |= static_cast<std::uint8_t>(1U << (7 - bits_ % 8));
  ++bits_;
}

void BitBuffer::push_bits(std::uint64_t value, unsigned width) {
  if (width > 64) throw InvalidInput("push_bits: width exceeds 64");
  for (unsigned k = width; k-- > 0;) push_bit((value >> k) & 1U);
}

void BitBuffer::append(const BitBuffer& other) {
  for (std::size_t i = 0; i < other.size(); ++i) push_bit(other.bit(i));
}

std::string BitBuffer::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t nibbles = (bits_ + 3) / 4;
  std::string out;
  out.reserve(nibbles);
  for (std::size_t k = 0; k < nibbles; ++k) {
    const std::uint8_t byte = bytes_[k / 2];
    out.push_back(kDigits[k % 2 == 0 ? byte >> 4 : byte & 0xF]);
  }
  return out;
}

bool BitReader::read_bit() {
  if (pos_ >= buffer_->size()) throw ContractViolation("message ended before the expected field");
  return buffer_->bit(pos_++);
}

std::uint64_t BitReader::read_bits(unsigned width) {
  if (width > 64) throw InvalidInput("read_bits: width exceeds 64");
  if (remaining() < width) throw ContractViolation("message ended before the expected field");
  std::uint64_t v = 0;
  for (unsigned k = 0; k < width; ++k) v = (v << 1) | static_cast<std::uint64_t>(read_bit());
  return v;
}

}  // namespace ghd
