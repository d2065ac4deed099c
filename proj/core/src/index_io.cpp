#include "sling/index_io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <boost/crc.hpp>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>
#include <utility>
#include <string>

#include "byte_codec.hpp"
#include "sling/errors.hpp"

namespace sling {
namespace {

using Crc64 = boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, 0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL, true, true>;

constexpr std::size_t kHeaderBytes = 5 + 4 + 8 + 7 * 8 + 4 + 8 + 8;
constexpr std::size_t kDirectoryEntryBytes = 8 + 4 + 1 + 2;
constexpr std::size_t kEntryBytes = 1 + 4 + 8;
constexpr std::size_t kCrcBytes = 8;

constexpr std::uint32_t kFlagAdaptive = 1u << 0;
constexpr std::uint32_t kFlagReduction = 1u << 1;
constexpr std::uint32_t kFlagMarking = 1u << 2;

std::size_t record_bytes(const HpSet& set) { return set.entries.size() * kEntryBytes + set.marked.size() * 4; }

void write_header(detail::ByteWriter& w, const SlingIndex& index) {
  const SlingParams& p = index.params;
  w.raw(kIndexMagic, sizeof kIndexMagic);
  w.u32(kIndexVersion);
  w.u64(index.num_nodes());
  for (double v : {p.c, p.eps, p.eps_d, p.theta, p.delta, p.delta_d, p.gamma}) w.f64(v);
  std::uint32_t flags = 0;
  if (p.mode == Estimator::kAdaptive) flags |= kFlagAdaptive;
  if (p.space_reduction) flags |= kFlagReduction;
  if (p.mark_hps) flags |= kFlagMarking;
  w.u32(flags);
  w.u64(index.seed);
  w.u64(index.graph_fingerprint);
}

struct Header {
  std::uint64_t n = 0;
  SlingParams params;
  std::uint64_t seed = 0;
  std::uint64_t fingerprint = 0;
};

// Checks magic and version only; the remaining fields are decoded after the
// checksum has been verified.
void check_preamble(std::span<const std::byte> bytes) {
  if (bytes.size() < sizeof kIndexMagic ||
      std::memcmp(bytes.data(), kIndexMagic, sizeof kIndexMagic) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic, "not a SLING index file (bad magic)");
  }
  if (bytes.size() < sizeof kIndexMagic + 4) throw FormatError(FormatError::Kind::kChecksum, "index file truncated");
  detail::ByteReader r(bytes, sizeof kIndexMagic);
  const std::uint32_t version = r.u32();
  if (version != kIndexVersion) {
    throw FormatError(FormatError::Kind::kBadVersion, "unsupported index version " + std::to_string(version));
  }
}

Header read_header(detail::ByteReader& r) {
  Header h;
  r.seek(sizeof kIndexMagic + 4);
  h.n = r.u64();
  SlingParams& p = h.params;
  p.c = r.f64();
  p.eps = r.f64();
  p.eps_d = r.f64();
  p.theta = r.f64();
  p.delta = r.f64();
  p.delta_d = r.f64();
  p.gamma = r.f64();
  const std::uint32_t flags = r.u32();
  p.mode = (flags & kFlagAdaptive) != 0 ? Estimator::kAdaptive : Estimator::kBasic;
  p.space_reduction = (flags & kFlagReduction) != 0;
  p.mark_hps = (flags & kFlagMarking) != 0;
  h.seed = r.u64();
  h.fingerprint = r.u64();
  if (h.n >= (std::uint64_t{1} << 32) - 1) throw FormatError(FormatError::Kind::kTruncated, "corrupt node count");
  return h;
}

void check_graph(const Header& h, const Graph* graph) {
  if (graph == nullptr) return;
  if (graph->num_nodes() != h.n || graph->fingerprint() != h.fingerprint) {
    throw FormatError(FormatError::Kind::kGraphMismatch, "index was built for a different graph");
  }
}

void read_record(detail::ByteReader& r, std::uint32_t entries, std::uint16_t marked, std::uint64_t n, HpSet& set) {
  set.entries.resize(entries);
  for (HpEntry& e : set.entries) {
    e.step = r.u8();
    e.target = r.u32();
    e.value = r.f64();
    if (e.target >= n) throw FormatError(FormatError::Kind::kTruncated, "corrupt entry target");
  }
  set.marked.resize(marked);
  for (auto& m : set.marked) {
    m = r.u32();
    if (m >= entries) throw FormatError(FormatError::Kind::kTruncated, "corrupt marked index");
  }
}

class FileDescriptor {
 public:
  explicit FileDescriptor(int fd) : fd_(fd) {}
  ~FileDescriptor() {
    if (fd_ >= 0) ::close(fd_);
  }
  FileDescriptor(const FileDescriptor&) = delete;
  FileDescriptor& operator=(const FileDescriptor&) = delete;
  int get() const noexcept { return fd_; }
  int release() noexcept { return std::exchange(fd_, -1); }

 private:
  int fd_;
};

void pread_exact(int fd, void* out, std::size_t size, std::uint64_t offset) {
  auto* p = static_cast<char*>(out);
  while (size > 0) {
    const ssize_t got = ::pread(fd, p, size, static_cast<off_t>(offset));
    if (got < 0) {
      if (errno == EINTR) continue;
      throw FormatError(FormatError::Kind::kIo, std::string("read failed: ") + std::strerror(errno));
    }
    if (got == 0) throw FormatError(FormatError::Kind::kTruncated, "unexpected end of index file");
    p += got;
    size -= static_cast<std::size_t>(got);
    offset += static_cast<std::uint64_t>(got);
  }
}

}  // namespace

std::uint64_t crc64(std::span<const std::byte> bytes) noexcept {
  Crc64 crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

std::size_t serialized_size(const SlingIndex& index) {
  std::size_t total = kHeaderBytes + index.num_nodes() * (8 + kDirectoryEntryBytes) + kCrcBytes;
  for (const HpSet& set : index.hp) total += record_bytes(set);
  return total;
}

std::vector<std::byte> serialize_index(const SlingIndex& index) {
  const std::size_t n = index.num_nodes();
  if (index.hp.size() != n) throw InvalidArgument("index has mismatched correction and hp arrays");
  detail::ByteWriter w;
  w.reserve(serialized_size(index));
  write_header(w, index);
  for (double d : index.correction) w.f64(d);

  std::uint64_t offset = kHeaderBytes + n * (8 + kDirectoryEntryBytes);
  for (const HpSet& set : index.hp) {
    if (set.entries.size() > 0xffffffffu) throw FormatError(FormatError::Kind::kUnsupported, "hp set too large");
    if (set.marked.size() > 0xffffu) throw FormatError(FormatError::Kind::kUnsupported, "too many marked entries");
    w.u64(offset);
    w.u32(static_cast<std::uint32_t>(set.entries.size()));
    w.u8(set.reduced ? 1 : 0);
    w.u16(static_cast<std::uint16_t>(set.marked.size()));
    offset += record_bytes(set);
  }
  for (const HpSet& set : index.hp) {
    for (const HpEntry& e : set.entries) {
      if (e.step > 0xff) throw FormatError(FormatError::Kind::kUnsupported, "hp step above 255 cannot be stored");
      w.u8(static_cast<std::uint8_t>(e.step));
      w.u32(e.target);
      w.f64(e.value);
    }
    for (std::uint32_t m : set.marked) w.u32(m);
  }
  w.u64(crc64(w.bytes()));
  return std::move(w.bytes());
}

void write_index(const SlingIndex& index, std::ostream& out) {
  const auto bytes = serialize_index(index);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatError::Kind::kIo, "failed to write index");
}

SlingIndex deserialize_index(std::span<const std::byte> bytes, const Graph* graph) {
  check_preamble(bytes);
  if (bytes.size() < kHeaderBytes + kCrcBytes) throw FormatError(FormatError::Kind::kChecksum, "index file truncated");
  const auto body = bytes.first(bytes.size() - kCrcBytes);
  detail::ByteReader tail(bytes, body.size());
  if (crc64(body) != tail.u64()) throw FormatError(FormatError::Kind::kChecksum, "index checksum mismatch");

  detail::ByteReader r(body);
  const Header h = read_header(r);
  check_graph(h, graph);
  SlingIndex index;
  index.params = h.params;
  index.seed = h.seed;
  index.graph_fingerprint = h.fingerprint;
  if (h.n * (8 + kDirectoryEntryBytes) > body.size()) throw FormatError(FormatError::Kind::kTruncated, "corrupt node count");
  index.correction.resize(h.n);
  for (double& d : index.correction) d = r.f64();
  struct Dir {
    std::uint64_t offset;
    std::uint32_t entries;
    std::uint8_t reduced;
    std::uint16_t marked;
  };
  std::vector<Dir> dir(h.n);
  for (Dir& e : dir) e = {r.u64(), r.u32(), r.u8(), r.u16()};
  index.hp.resize(h.n);
  for (std::size_t v = 0; v < h.n; ++v) {
    HpSet& set = index.hp[v];
    set.owner = static_cast<NodeId>(v);
    set.reduced = dir[v].reduced != 0;
    r.seek(dir[v].offset);
    read_record(r, dir[v].entries, dir[v].marked, h.n, set);
  }
  return index;
}

SlingIndex read_index(std::istream& in, const Graph* graph) {
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const std::byte*>(raw.data());
  return deserialize_index({p, raw.size()}, graph);
}

void save_index(const SlingIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::kIo, "cannot open '" + path + "' for writing");
  write_index(index, out);
}

SlingIndex load_index(const std::string& path, const Graph* graph) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::kIo, "cannot open index '" + path + "'");
  return read_index(in, graph);
}

DiskIndex::DiskIndex(const std::string& path, const Graph* graph) {
  FileDescriptor fd(::open(path.c_str(), O_RDONLY | O_CLOEXEC));
  if (fd.get() < 0) throw FormatError(FormatError::Kind::kIo, "cannot open index '" + path + "'");
  const off_t end = ::lseek(fd.get(), 0, SEEK_END);
  if (end < 0) throw FormatError(FormatError::Kind::kIo, "cannot size index '" + path + "'");
  const auto file_size = static_cast<std::uint64_t>(end);

  std::vector<std::byte> head(std::min<std::uint64_t>(file_size, kHeaderBytes));
  pread_exact(fd.get(), head.data(), head.size(), 0);
  check_preamble(head);
  if (file_size < kHeaderBytes + kCrcBytes) throw FormatError(FormatError::Kind::kChecksum, "index file truncated");

  // Stream the whole body through the checksum.
  Crc64 crc;
  std::vector<std::byte> chunk(1 << 20);
  const std::uint64_t body_size = file_size - kCrcBytes;
  for (std::uint64_t pos = 0; pos < body_size;) {
    const auto take = static_cast<std::size_t>(std::min<std::uint64_t>(chunk.size(), body_size - pos));
    pread_exact(fd.get(), chunk.data(), take, pos);
    crc.process_bytes(chunk.data(), take);
    pos += take;
  }
  std::byte stored[kCrcBytes];
  pread_exact(fd.get(), stored, kCrcBytes, body_size);
  if (detail::ByteReader(std::span<const std::byte>(stored, kCrcBytes)).u64() != crc.checksum()) {
    throw FormatError(FormatError::Kind::kChecksum, "index checksum mismatch");
  }

  detail::ByteReader hr(head);
  const Header h = read_header(hr);
  check_graph(h, graph);
  const std::uint64_t table_bytes = h.n * (8 + kDirectoryEntryBytes);
  if (kHeaderBytes + table_bytes > body_size) throw FormatError(FormatError::Kind::kTruncated, "corrupt node count");
  std::vector<std::byte> tables(table_bytes);
  pread_exact(fd.get(), tables.data(), tables.size(), kHeaderBytes);
  detail::ByteReader r(tables);
  correction_.resize(h.n);
  for (double& d : correction_) d = r.f64();
  directory_.resize(h.n);
  for (DirectoryEntry& e : directory_) {
    e.offset = r.u64();
    e.entries = r.u32();
    e.reduced = r.u8() != 0;
    e.marked = r.u16();
    const std::uint64_t size = std::uint64_t{e.entries} * kEntryBytes + std::uint64_t{e.marked} * 4;
    if (e.offset > body_size || size > body_size - e.offset) {
      throw FormatError(FormatError::Kind::kTruncated, "directory entry points past end of file");
    }
  }
  params_ = h.params;
  seed_ = h.seed;
  fingerprint_ = h.fingerprint;
  fd_ = fd.release();
}

DiskIndex::~DiskIndex() {
  if (fd_ >= 0) ::close(fd_);
}

const HpSet& DiskIndex::hp_set(NodeId v, HpSet& scratch) const {
  if (v >= directory_.size()) throw InvalidArgument("node out of range");
  const DirectoryEntry& e = directory_[v];
  std::vector<std::byte> buffer(std::size_t{e.entries} * kEntryBytes + std::size_t{e.marked} * 4);
  pread_exact(fd_, buffer.data(), buffer.size(), e.offset);
  records_read_.fetch_add(1, std::memory_order_relaxed);
  detail::ByteReader r(buffer);
  scratch.owner = v;
  scratch.reduced = e.reduced;
  read_record(r, e.entries, e.marked, directory_.size(), scratch);
  return scratch;
}

}  // namespace sling
