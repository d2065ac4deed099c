#include "sling/mc_baseline.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <utility>

#include "byte_codec.hpp"
#include "sling/errors.hpp"
#include "sling/index_io.hpp"
#include "sling/parallel.hpp"
#include "sling/random.hpp"

namespace sling {
namespace {

constexpr std::size_t kMcHeaderBytes = 5 + 4 + 8 + 3 * 8 + 4 + 8 + 8 + 8;

void check_node(const McIndex& index, NodeId v) {
  if (v >= index.n) throw InvalidArgument("node id " + std::to_string(v) + " out of range");
}

std::vector<std::byte> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::kIo, "cannot open '" + path + "'");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> bytes(raw.size());
  if (!raw.empty()) std::memcpy(bytes.data(), raw.data(), raw.size());
  return bytes;
}

}  // namespace

McParams mc_parameters(double c, double eps, double delta, std::size_t n) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("decay c must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (n == 0) throw InvalidArgument("graph has no nodes");
  McParams p;
  p.c = c;
  p.eps = eps;
  p.delta = delta;
  p.t = static_cast<int>(std::floor(std::log(eps / 2.0) / std::log(c))) + 1;
  const double walks = 14.0 / (3.0 * eps * eps) * (std::log(2.0 / delta) + 2.0 * std::log(static_cast<double>(n)));
  p.walks = static_cast<std::uint64_t>(std::ceil(walks));
  return p;
}

McIndex mc_build(const Graph& g, const McParams& params, std::uint64_t seed, unsigned workers,
                 std::uint64_t max_steps) {
  const std::size_t n = g.num_nodes();
  if (params.t < 0 || params.walks == 0) throw InvalidArgument("invalid Monte Carlo parameters");
  const long double needed = static_cast<long double>(n) * params.walks * (params.t + 1);
  if (needed > static_cast<long double>(max_steps)) {
    throw ResourceLimit("Monte Carlo index needs " + std::to_string(static_cast<std::uint64_t>(needed)) +
                        " walk steps, above the cap of " + std::to_string(max_steps));
  }
  McIndex index;
  index.params = params;
  index.n = n;
  index.seed = seed;
  index.graph_fingerprint = g.fingerprint();
  index.steps.assign(static_cast<std::size_t>(needed), index.sentinel());

  const std::size_t stride = index.stride();
  parallel_for_blocks(n, workers, 1, [&](unsigned, std::size_t lo, std::size_t hi) {
    for (std::size_t v = lo; v < hi; ++v) {
      RandomStream rng(seed, v);
      NodeId* out = index.steps.data() + v * params.walks * stride;
      for (std::uint64_t w = 0; w < params.walks; ++w, out += stride) {
        NodeId at = static_cast<NodeId>(v);
        out[0] = at;
        for (std::size_t step = 1; step < stride; ++step) {
          const auto in = g.in_neighbors(at);
          if (in.empty()) break;
          at = in[rng.below(in.size())];
          out[step] = at;
        }
      }
    }
  });
  return index;
}

McIndex mc_build(const Graph& g, double c, double eps, double delta, std::uint64_t seed, unsigned workers,
                 std::uint64_t max_steps) {
  return mc_build(g, mc_parameters(c, eps, delta, g.num_nodes()), seed, workers, max_steps);
}

double mc_pair(const McIndex& index, NodeId i, NodeId j) {
  check_node(index, i);
  check_node(index, j);
  if (i == j) return 1.0;
  const std::size_t stride = index.stride();
  std::vector<double> weight(stride);
  for (std::size_t s = 0; s < stride; ++s) weight[s] = std::pow(index.params.c, static_cast<double>(s));
  const NodeId sentinel = index.sentinel();
  double sum = 0.0;
  for (std::uint64_t w = 0; w < index.params.walks; ++w) {
    const auto a = index.walk(i, w);
    const auto b = index.walk(j, w);
    for (std::size_t s = 1; s < stride; ++s) {
      if (a[s] == sentinel || b[s] == sentinel) break;
      if (a[s] == b[s]) {
        sum += weight[s];
        break;
      }
    }
  }
  return sum / static_cast<double>(index.params.walks);
}

SourceResult mc_source(const McIndex& index, NodeId i) {
  check_node(index, i);
  SourceResult result{i, {}};
  for (NodeId j = 0; j < index.n; ++j) {
    const double v = mc_pair(index, i, j);
    if (v != 0.0) result.scores.emplace_back(j, v);
  }
  return result;
}

std::vector<std::byte> serialize_mc_index(const McIndex& index) {
  detail::ByteWriter w;
  w.reserve(kMcHeaderBytes + index.steps.size() * 4 + 8);
  w.raw(kMcIndexMagic, sizeof kMcIndexMagic);
  w.u32(kMcIndexVersion);
  w.u64(index.n);
  w.f64(index.params.c);
  w.f64(index.params.eps);
  w.f64(index.params.delta);
  w.u32(static_cast<std::uint32_t>(index.params.t));
  w.u64(index.params.walks);
  w.u64(index.seed);
  w.u64(index.graph_fingerprint);
  for (NodeId s : index.steps) w.u32(s);
  w.u64(crc64(w.bytes()));
  return std::move(w.bytes());
}

McIndex deserialize_mc_index(std::span<const std::byte> bytes, const Graph* graph) {
  if (bytes.size() < sizeof kMcIndexMagic || std::memcmp(bytes.data(), kMcIndexMagic, sizeof kMcIndexMagic) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic, "not a Monte Carlo index file (bad magic)");
  }
  detail::ByteReader pre(bytes, sizeof kMcIndexMagic);
  const std::uint32_t version = pre.u32();
  if (version != kMcIndexVersion) {
    throw FormatError(FormatError::Kind::kBadVersion, "unsupported index version " + std::to_string(version));
  }
  if (bytes.size() < kMcHeaderBytes + 8) throw FormatError(FormatError::Kind::kChecksum, "index file truncated");
  const auto body = bytes.first(bytes.size() - 8);
  if (crc64(body) != detail::ByteReader(bytes, body.size()).u64()) {
    throw FormatError(FormatError::Kind::kChecksum, "index checksum mismatch");
  }
  detail::ByteReader r(body, sizeof kMcIndexMagic + 4);
  McIndex index;
  index.n = r.u64();
  index.params.c = r.f64();
  index.params.eps = r.f64();
  index.params.delta = r.f64();
  index.params.t = static_cast<int>(r.u32());
  index.params.walks = r.u64();
  index.seed = r.u64();
  index.graph_fingerprint = r.u64();
  if (graph != nullptr && (graph->num_nodes() != index.n || graph->fingerprint() != index.graph_fingerprint)) {
    throw FormatError(FormatError::Kind::kGraphMismatch, "index was built for a different graph");
  }
  const long double count = static_cast<long double>(index.n) * index.params.walks * (index.params.t + 1);
  if (count * 4 != static_cast<long double>(body.size() - kMcHeaderBytes)) {
    throw FormatError(FormatError::Kind::kTruncated, "walk table size does not match header");
  }
  index.steps.resize(static_cast<std::size_t>(count));
  for (NodeId& s : index.steps) {
    s = r.u32();
    if (s > index.n) throw FormatError(FormatError::Kind::kTruncated, "corrupt walk step");
  }
  return index;
}

void save_mc_index(const McIndex& index, const std::string& path) {
  const auto bytes = serialize_mc_index(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::kIo, "cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatError::Kind::kIo, "failed to write index");
}

McIndex load_mc_index(const std::string& path, const Graph* graph) {
  return deserialize_mc_index(read_file(path), graph);
}

std::string sniff_magic(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::kIo, "cannot open '" + path + "'");
  char buf[5] = {};
  in.read(buf, sizeof buf);
  return std::string(buf, static_cast<std::size_t>(in.gcount()));
}

}  // namespace sling
