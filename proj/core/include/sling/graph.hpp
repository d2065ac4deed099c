#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sling {

using NodeId = std::uint32_t;

struct LoadOptions {
  bool undirected = false;
  char comment_prefix = '#';
};

// Immutable directed graph with both in- and out-adjacency in CSR form.
//
// Node ids are dense in [0, n). Raw labels from the input file are kept in
// `label_of`, and every adjacency list is sorted ascending with duplicates
// removed. Self-loops are allowed.
class Graph {
 public:
  Graph() = default;

  // Builds from dense edges (u -> v), u, v < n. Duplicates are collapsed.
  // Labels default to the identity mapping; explicit labels must be strictly
  // increasing.
  static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);
  static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                          std::vector<std::uint64_t> labels);

  std::size_t num_nodes() const noexcept { return in_offsets_.empty() ? 0 : in_offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return in_targets_.size(); }

  std::span<const NodeId> in_neighbors(NodeId v) const noexcept {
    return {in_targets_.data() + in_offsets_[v], in_targets_.data() + in_offsets_[v + 1]};
  }
  std::span<const NodeId> out_neighbors(NodeId v) const noexcept {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::size_t in_degree(NodeId v) const noexcept { return in_offsets_[v + 1] - in_offsets_[v]; }
  std::size_t out_degree(NodeId v) const noexcept { return out_offsets_[v + 1] - out_offsets_[v]; }

  // eta(v) = |I(v)| + sum over x in I(v) of |I(x)|: the work needed to
  // enumerate v's two-hop in-neighbourhood.
  std::size_t two_hop_in_size(NodeId v) const noexcept;

  std::uint64_t label_of(NodeId v) const noexcept { return labels_[v]; }
  std::span<const std::uint64_t> labels() const noexcept { return labels_; }
  // Dense id for a raw label; returns false when the label is unknown.
  bool find_label(std::uint64_t label, NodeId& out) const noexcept;

  // Stable 64-bit digest over n, m and every edge. Used to tie an index file
  // to the graph it was built from.
  std::uint64_t fingerprint() const noexcept;

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_targets_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::uint64_t> labels_;  // strictly increasing
};

// Parses a SNAP-style edge list: one "u v" pair per line, arbitrary whitespace,
// lines starting with `comment_prefix` (after leading blanks) and blank lines
// skipped. Labels are non-negative integers and are remapped to dense ids in
// ascending label order, so files that already use 0..n-1 keep their ids.
//
// Throws ParseError (with line number) for malformed lines and when no edge
// was read.
Graph load_edge_list(std::istream& in, const LoadOptions& opts = {});
Graph load_edge_list_file(const std::string& path, const LoadOptions& opts = {});

// Writes "label_u label_v" per edge in out-adjacency order.
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace sling
