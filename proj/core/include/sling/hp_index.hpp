#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sling/graph.hpp"

namespace sling {

// Approximate hitting probability h~^(step)(owner, target).
struct HpEntry {
  std::uint16_t step = 0;
  NodeId target = 0;
  double value = 0.0;

  friend bool key_less(const HpEntry& a, const HpEntry& b) noexcept {
    return a.step != b.step ? a.step < b.step : a.target < b.target;
  }
  bool operator==(const HpEntry&) const = default;
};

// Stored hitting probabilities of one node.
//
// Entries are sorted by (step, target) with at most one entry per key. When
// `reduced` is set the step-1 and step-2 entries were dropped and are
// recomputed exactly at query time. `marked` holds indexes into `entries`
// that get expanded by one step for single-pair queries.
struct HpSet {
  NodeId owner = 0;
  std::vector<HpEntry> entries;
  bool reduced = false;
  std::vector<std::uint32_t> marked;

  bool operator==(const HpSet&) const = default;
};

// Largest step an entry can reach for threshold theta: any entry above theta
// at step l satisfies (sqrt c)^l > theta.
int max_hp_step(double c, double theta);

// Upper bound 1 / (theta * (1 - sqrt c)) on the entries per node.
double hp_set_size_bound(double c, double theta);

// Runs the reverse local update from every node k: starting from
// h~^(0)(k, k) = 1, each retained value at step l is pushed to the
// out-neighbours i of its node as sqrt(c) * value / |I(i)| at step l + 1.
// Values <= theta are dropped and not propagated. The per-target lists are
// then transposed into per-source sets.
//
// Deterministic: targets are processed independently and every sum is
// accumulated in ascending node order, so the result is bit-identical for any
// worker count.
std::vector<HpSet> build_all_hp_sets(const Graph& g, double c, double theta, unsigned workers = 1);

// Exact h^(0), h^(1) and h^(2) from v in O(eta(v)) time, sorted by
// (step, target).
std::vector<HpEntry> build_two_hop(const Graph& g, double c, NodeId v);

// Drops steps 1-2 from every set whose two-hop in-size eta(v) <= gamma/theta
// and flags it as reduced. Returns the number of sets reduced.
std::size_t apply_space_reduction(std::vector<HpSet>& sets, const Graph& g, double gamma, double theta);

// Marking budget ceil(1/sqrt(eps)) and the in-degree eligibility limit
// floor(1/sqrt(eps)).
std::size_t marking_budget(double eps);
std::size_t marking_degree_limit(double eps);

// Marks, per node, the `marking_budget(eps)` largest stored entries whose
// target has at most `marking_degree_limit(eps)` in-neighbours. Ties go to the
// smaller step, then the smaller target.
void mark_top_hps(std::vector<HpSet>& sets, const Graph& g, double eps);

// Effective entry list used at query time: the stored entries, plus the exact
// step-1/2 entries when the set is reduced, plus (if `expand`) the one-step
// expansion of every marked entry into keys not already present. Sorted by
// (step, target).
std::vector<HpEntry> materialize_query_hp_set(const HpSet& stored, const Graph& g, double c, bool expand = true);

}  // namespace sling
