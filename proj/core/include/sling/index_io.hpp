#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sling/graph.hpp"
#include "sling/index.hpp"
#include "sling/index_view.hpp"

// Index file layout (all integers little-endian, doubles as IEEE-754 bits):
//
//   magic      "SLNG1"
//   version    u32 (currently 1)
//   n          u64
//   c, eps, eps_d, theta, delta, delta_d, gamma   f64 each
//   flags      u32  bit0 adaptive estimator, bit1 space reduction, bit2 marking
//   seed       u64
//   graph fingerprint u64
//   correction n x f64
//   directory  n x {offset u64, entry count u32, reduced u8, marked count u16}
//   node records, at their directory offsets:
//              entries {step u8, target u32, value f64} ...
//              marked entry indexes u32 ...
//   crc64      u64 (CRC-64/XZ of every preceding byte)
namespace sling {

inline constexpr char kIndexMagic[5] = {'S', 'L', 'N', 'G', '1'};
inline constexpr std::uint32_t kIndexVersion = 1;

void write_index(const SlingIndex& index, std::ostream& out);
std::vector<std::byte> serialize_index(const SlingIndex& index);
std::size_t serialized_size(const SlingIndex& index);

// Validates magic, version and checksum before decoding; nothing is returned
// on failure. When `graph` is given its fingerprint must match the index.
SlingIndex deserialize_index(std::span<const std::byte> bytes, const Graph* graph = nullptr);
SlingIndex read_index(std::istream& in, const Graph* graph = nullptr);

void save_index(const SlingIndex& index, const std::string& path);
SlingIndex load_index(const std::string& path, const Graph* graph = nullptr);

// Index whose HP sets stay on disk. Opening reads the header, correction
// factors and directory (and verifies the checksum over the whole file);
// every hp_set() call is one positioned read of that node's record.
class DiskIndex final : public IndexView {
 public:
  explicit DiskIndex(const std::string& path, const Graph* graph = nullptr);
  ~DiskIndex() override;
  DiskIndex(const DiskIndex&) = delete;
  DiskIndex& operator=(const DiskIndex&) = delete;

  const SlingParams& params() const override { return params_; }
  std::size_t num_nodes() const override { return correction_.size(); }
  std::span<const double> correction() const override { return correction_; }
  std::uint64_t graph_fingerprint() const override { return fingerprint_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const HpSet& hp_set(NodeId v, HpSet& scratch) const override;

  // Number of node records fetched from disk so far.
  std::uint64_t records_read() const noexcept { return records_read_.load(); }

 private:
  struct DirectoryEntry {
    std::uint64_t offset;
    std::uint32_t entries;
    bool reduced;
    std::uint16_t marked;
  };

  int fd_ = -1;
  SlingParams params_;
  std::uint64_t seed_ = 0;
  std::uint64_t fingerprint_ = 0;
  std::vector<double> correction_;
  std::vector<DirectoryEntry> directory_;
  mutable std::atomic<std::uint64_t> records_read_{0};
};

// Shared container helpers (also used by the Monte Carlo index format).
std::uint64_t crc64(std::span<const std::byte> bytes) noexcept;

}  // namespace sling
