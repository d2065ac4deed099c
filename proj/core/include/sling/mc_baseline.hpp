#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sling/graph.hpp"
#include "sling/query.hpp"

// Monte Carlo SimRank baseline: every node stores n_w plain reverse random
// walks (uniform in-neighbour at every step, no stopping coin) cut at step t.
// s(i, j) is estimated by averaging c^tau over the paired walks of i and j,
// tau being their first meeting step (c^tau = 0 when they never meet).
namespace sling {

inline constexpr char kMcIndexMagic[5] = {'S', 'L', 'M', 'C', '1'};
inline constexpr std::uint32_t kMcIndexVersion = 1;
// Default cap on n * n_w * (t + 1) stored steps (4 bytes each).
inline constexpr std::uint64_t kDefaultMcStepCap = std::uint64_t{1} << 28;

struct McParams {
  double c = 0.6;
  double eps = 0.025;
  double delta = 0.01;
  int t = 0;                // truncation step
  std::uint64_t walks = 0;  // n_w

  bool operator==(const McParams&) const = default;
};

// t = floor(log_c(eps / 2)) + 1 and
// n_w = ceil(14 / (3 eps^2) * (ln(2/delta) + 2 ln n)).
McParams mc_parameters(double c, double eps, double delta, std::size_t n);

struct McIndex {
  McParams params;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t graph_fingerprint = 0;
  // Node-major, then walk-major, (t + 1) steps per walk. Steps after the
  // walk stopped at a node without in-neighbours hold the sentinel n.
  std::vector<NodeId> steps;

  std::size_t stride() const noexcept { return static_cast<std::size_t>(params.t) + 1; }
  NodeId sentinel() const noexcept { return static_cast<NodeId>(n); }
  std::span<const NodeId> walk(NodeId v, std::uint64_t w) const noexcept {
    return {steps.data() + (static_cast<std::size_t>(v) * params.walks + w) * stride(), stride()};
  }
  bool operator==(const McIndex&) const = default;
};

// Samples every walk; node v draws from stream (seed, v). Throws
// ResourceLimit when n * n_w * (t + 1) exceeds `max_steps`.
McIndex mc_build(const Graph& g, const McParams& params, std::uint64_t seed, unsigned workers = 1,
                 std::uint64_t max_steps = kDefaultMcStepCap);
McIndex mc_build(const Graph& g, double c, double eps, double delta, std::uint64_t seed, unsigned workers = 1,
                 std::uint64_t max_steps = kDefaultMcStepCap);

// Exactly 1 when i == j. Throws InvalidArgument for out-of-range nodes.
double mc_pair(const McIndex& index, NodeId i, NodeId j);

// mc_pair against every node; zero estimates omitted.
SourceResult mc_source(const McIndex& index, NodeId i);

// Same container conventions as the SLING index: little-endian header with
// magic "SLMC1", version, n, c, eps, delta, t, n_w, seed and graph
// fingerprint, the walk steps as u32, then a CRC-64 of everything before it.
std::vector<std::byte> serialize_mc_index(const McIndex& index);
McIndex deserialize_mc_index(std::span<const std::byte> bytes, const Graph* graph = nullptr);
void save_mc_index(const McIndex& index, const std::string& path);
McIndex load_mc_index(const std::string& path, const Graph* graph = nullptr);

// Reads the first five bytes of a file; used to tell index kinds apart.
std::string sniff_magic(const std::string& path);

}  // namespace sling
