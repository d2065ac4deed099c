#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "sling/errors.hpp"

namespace sling::detail {

// Little-endian encoder into a growing byte buffer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(static_cast<std::byte>(v)); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(const void* data, std::size_t size) {
    const auto* p = static_cast<const std::byte*>(data);
    bytes_.insert(bytes_.end(), p, p + size);
  }

  std::size_t size() const noexcept { return bytes_.size(); }
  void reserve(std::size_t n) { bytes_.reserve(n); }
  std::vector<std::byte>& bytes() noexcept { return bytes_; }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) bytes_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xff));
  }

  std::vector<std::byte> bytes_;
};

// Bounds-checked little-endian decoder. Running off the end throws
// FormatError(kTruncated).
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::byte> bytes, std::size_t pos = 0) : bytes_(bytes), pos_(pos) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }
  void raw(void* out, std::size_t size) {
    need(size);
    std::memcpy(out, bytes_.data() + pos_, size);
    pos_ += size;
  }

  std::size_t pos() const noexcept { return pos_; }
  void seek(std::size_t pos) {
    if (pos > bytes_.size()) throw FormatError(FormatError::Kind::kTruncated, "offset beyond end of data");
    pos_ = pos;
  }

 private:
  void need(std::size_t size) const {
    if (size > bytes_.size() - pos_) throw FormatError(FormatError::Kind::kTruncated, "unexpected end of data");
  }
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t(std::to_integer<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  std::span<const std::byte> bytes_;
  std::size_t pos_;
};

}  // namespace sling::detail
