#pragma once

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sling/graph.hpp"
#include "sling/random.hpp"

namespace sling::testing {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

inline Graph make_graph(std::size_t n, const EdgeList& edges) { return Graph::from_edges(n, edges); }

// v0 <-> v1.
inline Graph two_cycle() { return make_graph(2, {{0, 1}, {1, 0}}); }

// v2 -> v0, v2 -> v1.
inline Graph shared_parent() { return make_graph(3, {{2, 0}, {2, 1}}); }

// v0 -> v1 -> v2 -> v3 -> v0.
inline Graph four_cycle() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

// Complete digraph on three nodes without self-loops.
inline Graph complete3() { return make_graph(3, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}); }

// v3 -> v1, v3 -> v2, v1 -> v0, v2 -> v0.
inline Graph diamond() { return make_graph(4, {{3, 1}, {3, 2}, {1, 0}, {2, 0}}); }

// v0 -> v1 -> v2.
inline Graph chain3() { return make_graph(3, {{0, 1}, {1, 2}}); }

// A single edge v1 -> v0.
inline Graph single_edge() { return make_graph(2, {{1, 0}}); }

// n nodes and no edges.
inline Graph isolated_nodes(std::size_t n) { return make_graph(n, {}); }

// Node 0 with `fan_in` in-neighbours 1..fan_in, all of which have no
// in-neighbours themselves. Pairwise SimRank among them is 0, so the
// correction factor of node 0 is exactly 1 - c / fan_in.
inline Graph dissimilar_fan_in(std::size_t fan_in) {
  EdgeList edges;
  for (NodeId u = 1; u <= fan_in; ++u) edges.emplace_back(u, 0);
  return make_graph(fan_in + 1, edges);
}

// Uniform random directed graph with about `m` distinct edges (self-loops
// allowed), drawn from stream (seed, n).
inline Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  RandomStream rng(seed, n);
  EdgeList edges;
  edges.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    edges.emplace_back(static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n)));
  }
  return make_graph(n, edges);
}

// Graph family used by the accuracy checks: n in [lo, hi] and between n and
// min(max_per_node * n, n^2) edge draws, each graph from its own stream.
inline std::vector<Graph> random_suite(std::size_t count, std::size_t lo, std::size_t hi, std::size_t max_per_node,
                                       std::uint64_t seed) {
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t g = 0; g < count; ++g) {
    RandomStream rng(seed, 1000 + g);
    const std::size_t n = lo + rng.below(hi - lo + 1);
    const std::size_t cap = std::min(max_per_node * n, n * n);
    const std::size_t m = n + rng.below(cap - n + 1);
    out.push_back(random_graph(n, m, rng()));
  }
  return out;
}

// Unique path under the system temp directory; the file is removed on scope exit.
class TempPath {
 public:
  explicit TempPath(const std::string& stem) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            (stem + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  }
  ~TempPath() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempPath(const TempPath&) = delete;
  TempPath& operator=(const TempPath&) = delete;

  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace sling::testing
