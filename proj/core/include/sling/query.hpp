#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sling/graph.hpp"
#include "sling/hp_index.hpp"
#include "sling/index_view.hpp"

namespace sling {

struct PairScore {
  NodeId i = 0;
  NodeId j = 0;
  double score = 0.0;  // clamped to [0, 1]
  double raw = 0.0;    // unclamped estimate
};

// Sparse single-source result, sorted by node id, zero scores omitted.
struct SourceResult {
  NodeId source = 0;
  std::vector<std::pair<NodeId, double>> scores;

  // Score of `node`, 0 when absent.
  double at(NodeId node) const noexcept;
};

// sum over shared (step, target) keys of h_a * h_b * d[target]. Both inputs
// must be sorted by (step, target). The product h_a * h_b is formed first so
// the result is bitwise symmetric in (a, b).
double merge_join_score(std::span<const HpEntry> a, std::span<const HpEntry> b, std::span<const double> correction);

// Single-pair query over the query-time sets of i and j (two-hop splice and
// marked-entry expansion applied). Returns exactly 1 for i == j.
// Throws InvalidArgument for out-of-range nodes.
PairScore single_pair(const IndexView& index, const Graph& g, NodeId i, NodeId j);

// Single-source query by forward propagation. For every step l in the
// source's set (two-hop spliced, not expanded) the values h~ * d~ are pushed
// l rounds along out-edges, dropping intermediate values <= (sqrt c)^l * theta,
// and the round-l values are added to the result. The source itself is
// reported as 1. With `clamp` false the raw sums are returned.
SourceResult single_source(const IndexView& index, const Graph& g, NodeId i, bool clamp = true);

// n calls to single_pair. Reference implementation for benchmarking.
SourceResult single_source_naive(const IndexView& index, const Graph& g, NodeId i, bool clamp = true);

// Best k nodes other than i by single-source score (score desc, id asc).
std::vector<std::pair<NodeId, double>> top_k(const IndexView& index, const Graph& g, NodeId i, std::size_t k);

// Materialises every node's query-time set once so that many pairs can be
// scored without repeating the work. Used for all-pairs evaluation.
class AllPairsScorer {
 public:
  AllPairsScorer(const IndexView& index, const Graph& g, unsigned workers = 1);

  // Same value as single_pair(index, g, i, j).raw.
  double raw_score(NodeId i, NodeId j) const;
  double score(NodeId i, NodeId j) const;

 private:
  std::vector<std::vector<HpEntry>> sets_;
  std::vector<double> correction_;
};

}  // namespace sling
