#include "sling/query.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sling/errors.hpp"
#include "sling/parallel.hpp"

namespace sling {
namespace {

void check_node(const IndexView& index, const Graph& g, NodeId v) {
  if (index.num_nodes() != g.num_nodes()) throw InvalidArgument("index and graph disagree on node count");
  if (v >= g.num_nodes()) throw InvalidArgument("node id " + std::to_string(v) + " out of range");
}

double clamp_unit(double x) noexcept { return std::clamp(x, 0.0, 1.0); }

std::vector<HpEntry> query_set(const IndexView& index, const Graph& g, NodeId v, bool expand) {
  HpSet scratch;
  const HpSet& stored = index.hp_set(v, scratch);
  return materialize_query_hp_set(stored, g, index.params().c, expand);
}

}  // namespace

double SourceResult::at(NodeId node) const noexcept {
  auto it = std::lower_bound(scores.begin(), scores.end(), node,
                             [](const std::pair<NodeId, double>& p, NodeId v) { return p.first < v; });
  return it != scores.end() && it->first == node ? it->second : 0.0;
}

double merge_join_score(std::span<const HpEntry> a, std::span<const HpEntry> b, std::span<const double> correction) {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (key_less(*ia, *ib)) {
      ++ia;
    } else if (key_less(*ib, *ia)) {
      ++ib;
    } else {
      sum += (ia->value * ib->value) * correction[ia->target];
      ++ia;
      ++ib;
    }
  }
  return sum;
}

PairScore single_pair(const IndexView& index, const Graph& g, NodeId i, NodeId j) {
  check_node(index, g, i);
  check_node(index, g, j);
  if (i == j) return {i, j, 1.0, 1.0};
  const auto a = query_set(index, g, i, true);
  const auto b = query_set(index, g, j, true);
  const double raw = merge_join_score(a, b, index.correction());
  return {i, j, clamp_unit(raw), raw};
}

SourceResult single_source(const IndexView& index, const Graph& g, NodeId i, bool clamp) {
  check_node(index, g, i);
  const std::size_t n = g.num_nodes();
  const double sqrt_c = std::sqrt(index.params().c);
  const double theta = index.params().theta;
  const auto d = index.correction();
  const auto entries = query_set(index, g, i, false);

  std::vector<double> total(n, 0.0);
  std::vector<double> acc(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<std::pair<NodeId, double>> frontier;
  std::vector<NodeId> touched;

  auto begin = entries.begin();
  while (begin != entries.end()) {
    const int step = begin->step;
    auto end = std::find_if(begin, entries.end(), [step](const HpEntry& e) { return e.step != step; });
    frontier.clear();
    for (auto it = begin; it != end; ++it) frontier.emplace_back(it->target, it->value * d[it->target]);
    const double cutoff = std::pow(sqrt_c, step) * theta;

    for (int round = 0; round < step; ++round) {
      touched.clear();
      for (const auto& [x, value] : frontier) {
        if (value <= cutoff) continue;
        for (NodeId y : g.out_neighbors(x)) {
          if (!seen[y]) {
            seen[y] = 1;
            touched.push_back(y);
          }
          acc[y] += sqrt_c * value / static_cast<double>(g.in_degree(y));
        }
      }
      std::sort(touched.begin(), touched.end());
      frontier.clear();
      for (NodeId y : touched) {
        frontier.emplace_back(y, acc[y]);
        acc[y] = 0.0;
        seen[y] = 0;
      }
    }
    for (const auto& [j, value] : frontier) {
      if (value > 0.0) total[j] += value;
    }
    begin = end;
  }

  total[i] = 1.0;
  SourceResult result{i, {}};
  for (NodeId j = 0; j < n; ++j) {
    if (total[j] != 0.0) result.scores.emplace_back(j, clamp ? clamp_unit(total[j]) : total[j]);
  }
  return result;
}

SourceResult single_source_naive(const IndexView& index, const Graph& g, NodeId i, bool clamp) {
  check_node(index, g, i);
  SourceResult result{i, {}};
  for (NodeId j = 0; j < g.num_nodes(); ++j) {
    const PairScore p = single_pair(index, g, i, j);
    const double v = clamp ? p.score : p.raw;
    if (v != 0.0) result.scores.emplace_back(j, v);
  }
  return result;
}

std::vector<std::pair<NodeId, double>> top_k(const IndexView& index, const Graph& g, NodeId i, std::size_t k) {
  auto scores = single_source(index, g, i).scores;
  std::erase_if(scores, [i](const auto& p) { return p.first == i; });
  const auto better = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const std::size_t keep = std::min(k, scores.size());
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(keep), scores.end(), better);
  scores.resize(keep);
  return scores;
}

AllPairsScorer::AllPairsScorer(const IndexView& index, const Graph& g, unsigned workers)
    : sets_(g.num_nodes()), correction_(index.correction().begin(), index.correction().end()) {
  if (index.num_nodes() != g.num_nodes()) throw InvalidArgument("index and graph disagree on node count");
  parallel_for_blocks(g.num_nodes(), workers, 64, [&](unsigned, std::size_t lo, std::size_t hi) {
    for (std::size_t v = lo; v < hi; ++v) sets_[v] = query_set(index, g, static_cast<NodeId>(v), true);
  });
}

double AllPairsScorer::raw_score(NodeId i, NodeId j) const {
  if (i >= sets_.size() || j >= sets_.size()) throw InvalidArgument("node id out of range");
  if (i == j) return 1.0;
  return merge_join_score(sets_[i], sets_[j], correction_);
}

double AllPairsScorer::score(NodeId i, NodeId j) const { return clamp_unit(raw_score(i, j)); }

}  // namespace sling
