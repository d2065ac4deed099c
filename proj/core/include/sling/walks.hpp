#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sling/graph.hpp"
#include "sling/random.hpp"

namespace sling {

// A reverse walk that at every step continues with probability sqrt(c) to a
// uniformly chosen in-neighbour. steps[0] is the start node. A walk that
// reaches a node without in-neighbours stops there whatever the coin says.
using SqrtCWalk = std::vector<NodeId>;

SqrtCWalk sample_walk(const Graph& g, NodeId start, double c, RandomStream& rng);

// True iff the walks share a node at the same step index.
bool walks_meet(std::span<const NodeId> first, std::span<const NodeId> second) noexcept;

// Simulates one pair of independent sqrt(c)-walks from `a` and `b` in lock
// step and reports whether they meet. Stops as soon as they meet or either
// walk ends, so nothing is stored. `sqrt_c` is passed pre-computed because
// this sits in the innermost sampling loops.
bool sample_pair_meets(const Graph& g, NodeId a, NodeId b, double sqrt_c, RandomStream& rng) noexcept;

// Fraction of `samples` walk pairs from i and j that meet: an unbiased
// estimate of s(i, j). Exactly 1 when i == j.
double mc_pair_estimate(const Graph& g, double c, NodeId i, NodeId j, std::uint64_t samples, RandomStream& rng);

}  // namespace sling
