#include "sling/hp_index.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "sling/errors.hpp"
#include "sling/parallel.hpp"

namespace sling {
namespace {

constexpr std::size_t kBuildGrain = 32;

// One retained value from the reverse pass for target k: h~^(step)(source, k).
struct ReverseRecord {
  NodeId source;
  NodeId target;
  std::uint16_t step;
  double value;
};

struct ReverseScratch {
  std::vector<double> acc;
  std::vector<char> seen;
  std::vector<NodeId> touched;
  std::vector<std::pair<NodeId, double>> frontier;

  explicit ReverseScratch(std::size_t n) : acc(n, 0.0), seen(n, 0) {}
};

void reverse_push(const Graph& g, NodeId k, double sqrt_c, double theta, ReverseScratch& s,
                  std::vector<ReverseRecord>& out) {
  s.frontier.assign(1, {k, 1.0});
  std::uint32_t step = 0;
  while (!s.frontier.empty()) {
    if (step > 0xffffu) throw ResourceLimit("hitting-probability step exceeds 65535");
    s.touched.clear();
    for (const auto& [x, value] : s.frontier) {
      if (value <= theta) continue;
      out.push_back({x, k, static_cast<std::uint16_t>(step), value});
      for (NodeId i : g.out_neighbors(x)) {
        if (!s.seen[i]) {
          s.seen[i] = 1;
          s.touched.push_back(i);
        }
        s.acc[i] += sqrt_c * value / static_cast<double>(g.in_degree(i));
      }
    }
    std::sort(s.touched.begin(), s.touched.end());
    s.frontier.clear();
    for (NodeId i : s.touched) {
      s.frontier.emplace_back(i, s.acc[i]);
      s.acc[i] = 0.0;
      s.seen[i] = 0;
    }
    ++step;
  }
}

void sort_entries(std::vector<HpEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const HpEntry& a, const HpEntry& b) { return key_less(a, b); });
}

bool contains_key(std::span<const HpEntry> sorted, std::uint16_t step, NodeId target) {
  const HpEntry probe{step, target, 0.0};
  return std::binary_search(sorted.begin(), sorted.end(), probe,
                            [](const HpEntry& a, const HpEntry& b) { return key_less(a, b); });
}

double inverse_sqrt(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  return 1.0 / std::sqrt(eps);
}

}  // namespace

int max_hp_step(double c, double theta) {
  return static_cast<int>(std::ceil(std::log(theta) / std::log(std::sqrt(c))));
}

double hp_set_size_bound(double c, double theta) { return 1.0 / (theta * (1.0 - std::sqrt(c))); }

std::vector<HpSet> build_all_hp_sets(const Graph& g, double c, double theta, unsigned workers) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("decay factor must lie in (0, 1)");
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
  const std::size_t n = g.num_nodes();
  const double sqrt_c = std::sqrt(c);
  workers = resolve_workers(workers);

  const std::size_t blocks = (n + kBuildGrain - 1) / kBuildGrain;
  std::vector<std::vector<ReverseRecord>> block_records(blocks);
  std::vector<ReverseScratch> scratch;
  scratch.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) scratch.emplace_back(n);

  parallel_for_blocks(n, workers, kBuildGrain, [&](unsigned worker, std::size_t begin, std::size_t end) {
    auto& records = block_records[begin / kBuildGrain];
    for (std::size_t k = begin; k < end; ++k) reverse_push(g, static_cast<NodeId>(k), sqrt_c, theta, scratch[worker], records);
  });
  scratch.clear();

  // Transpose by bucketing on the source node, visiting targets in ascending
  // order so each bucket fills in a fixed order.
  std::vector<std::size_t> counts(n, 0);
  for (const auto& records : block_records) {
    for (const auto& r : records) ++counts[r.source];
  }
  std::vector<HpSet> sets(n);
  for (std::size_t v = 0; v < n; ++v) {
    sets[v].owner = static_cast<NodeId>(v);
    sets[v].entries.reserve(counts[v]);
  }
  for (auto& records : block_records) {
    for (const auto& r : records) sets[r.source].entries.push_back({r.step, r.target, r.value});
    records.clear();
    records.shrink_to_fit();
  }
  parallel_for_blocks(n, workers, 256, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) sort_entries(sets[v].entries);
  });
  return sets;
}

std::vector<HpEntry> build_two_hop(const Graph& g, double c, NodeId v) {
  const double sqrt_c = std::sqrt(c);
  std::vector<HpEntry> out{{0, v, 1.0}};
  const auto in_v = g.in_neighbors(v);
  if (in_v.empty()) return out;
  const double first = sqrt_c / static_cast<double>(in_v.size());
  std::vector<HpEntry> second;
  for (NodeId x : in_v) {
    out.push_back({1, x, first});
    const auto in_x = g.in_neighbors(x);
    if (in_x.empty()) continue;
    const double share = sqrt_c * first / static_cast<double>(in_x.size());
    for (NodeId y : in_x) second.push_back({2, y, share});
  }
  // Merge duplicates; stable sort keeps contributions in in-neighbour order.
  std::stable_sort(second.begin(), second.end(), [](const HpEntry& a, const HpEntry& b) { return a.target < b.target; });
  for (const HpEntry& e : second) {
    if (out.back().step == 2 && out.back().target == e.target) {
      out.back().value += e.value;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

std::size_t apply_space_reduction(std::vector<HpSet>& sets, const Graph& g, double gamma, double theta) {
  if (sets.size() != g.num_nodes()) throw InvalidArgument("hp sets do not match graph");
  const double limit = gamma / theta;
  std::size_t reduced = 0;
  for (HpSet& set : sets) {
    if (set.reduced) {
      ++reduced;
      continue;
    }
    if (!set.marked.empty()) throw InvalidArgument("space reduction must run before marking");
    if (static_cast<double>(g.two_hop_in_size(set.owner)) > limit) continue;
    std::erase_if(set.entries, [](const HpEntry& e) { return e.step == 1 || e.step == 2; });
    set.reduced = true;
    ++reduced;
  }
  return reduced;
}

// The 1e-9 slack keeps exact squares such as eps = 0.01 from rounding the
// wrong way.
std::size_t marking_budget(double eps) { return static_cast<std::size_t>(std::ceil(inverse_sqrt(eps) - 1e-9)); }

std::size_t marking_degree_limit(double eps) {
  return static_cast<std::size_t>(std::floor(inverse_sqrt(eps) + 1e-9));
}

void mark_top_hps(std::vector<HpSet>& sets, const Graph& g, double eps) {
  const std::size_t budget = marking_budget(eps);
  const std::size_t degree_limit = marking_degree_limit(eps);
  std::vector<std::uint32_t> candidates;
  for (HpSet& set : sets) {
    candidates.clear();
    for (std::size_t idx = 0; idx < set.entries.size(); ++idx) {
      if (g.in_degree(set.entries[idx].target) <= degree_limit) candidates.push_back(static_cast<std::uint32_t>(idx));
    }
    const auto better = [&](std::uint32_t a, std::uint32_t b) {
      const HpEntry& x = set.entries[a];
      const HpEntry& y = set.entries[b];
      if (x.value != y.value) return x.value > y.value;
      return key_less(x, y);
    };
    const std::size_t take = std::min(budget, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take), candidates.end(),
                      better);
    set.marked.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take));
    std::sort(set.marked.begin(), set.marked.end());
  }
}

std::vector<HpEntry> materialize_query_hp_set(const HpSet& stored, const Graph& g, double c, bool expand) {
  std::vector<HpEntry> result = stored.entries;
  if (stored.reduced) {
    for (const HpEntry& e : build_two_hop(g, c, stored.owner)) {
      if (e.step == 1 || e.step == 2) result.push_back(e);
    }
    sort_entries(result);
  }
  if (!expand || stored.marked.empty()) return result;

  const double sqrt_c = std::sqrt(c);
  std::vector<HpEntry> extra;
  for (std::uint32_t idx : stored.marked) {
    const HpEntry& m = stored.entries[idx];
    const auto in_j = g.in_neighbors(m.target);
    if (in_j.empty()) continue;
    const double share = sqrt_c * m.value / static_cast<double>(in_j.size());
    const auto next_step = static_cast<std::uint16_t>(m.step + 1);
    for (NodeId k : in_j) {
      if (!contains_key(result, next_step, k)) extra.push_back({next_step, k, share});
    }
  }
  if (extra.empty()) return result;
  std::stable_sort(extra.begin(), extra.end(), [](const HpEntry& a, const HpEntry& b) { return key_less(a, b); });
  std::vector<HpEntry> merged_extra;
  for (const HpEntry& e : extra) {
    if (!merged_extra.empty() && merged_extra.back().step == e.step && merged_extra.back().target == e.target) {
      merged_extra.back().value += e.value;
    } else {
      merged_extra.push_back(e);
    }
  }
  std::vector<HpEntry> out;
  out.reserve(result.size() + merged_extra.size());
  std::merge(result.begin(), result.end(), merged_extra.begin(), merged_extra.end(), std::back_inserter(out),
             [](const HpEntry& a, const HpEntry& b) { return key_less(a, b); });
  return out;
}

}  // namespace sling
