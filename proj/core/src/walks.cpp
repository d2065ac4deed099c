#include "sling/walks.hpp"

#include <algorithm>
#include <cmath>

#include "sling/errors.hpp"

namespace sling {
namespace {

// Advances `node` by one step. Returns false when the walk stops.
inline bool step(const Graph& g, NodeId& node, double sqrt_c, RandomStream& rng) noexcept {
  const auto in = g.in_neighbors(node);
  if (in.empty()) return false;
  if (!rng.bernoulli(sqrt_c)) return false;
  node = in.size() == 1 ? in[0] : in[rng.below(in.size())];
  return true;
}

}  // namespace

SqrtCWalk sample_walk(const Graph& g, NodeId start, double c, RandomStream& rng) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("decay factor must lie in (0, 1)");
  const double sqrt_c = std::sqrt(c);
  SqrtCWalk walk{start};
  NodeId node = start;
  while (step(g, node, sqrt_c, rng)) walk.push_back(node);
  return walk;
}

bool walks_meet(std::span<const NodeId> first, std::span<const NodeId> second) noexcept {
  const std::size_t common = std::min(first.size(), second.size());
  for (std::size_t l = 0; l < common; ++l) {
    if (first[l] == second[l]) return true;
  }
  return false;
}

bool sample_pair_meets(const Graph& g, NodeId a, NodeId b, double sqrt_c, RandomStream& rng) noexcept {
  while (a != b) {
    if (!step(g, a, sqrt_c, rng)) return false;
    if (!step(g, b, sqrt_c, rng)) return false;
  }
  return true;
}

double mc_pair_estimate(const Graph& g, double c, NodeId i, NodeId j, std::uint64_t samples, RandomStream& rng) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("decay factor must lie in (0, 1)");
  if (samples == 0) throw InvalidArgument("sample count must be positive");
  if (i == j) return 1.0;
  const double sqrt_c = std::sqrt(c);
  std::uint64_t met = 0;
  for (std::uint64_t s = 0; s < samples; ++s) met += sample_pair_meets(g, i, j, sqrt_c, rng) ? 1 : 0;
  return static_cast<double>(met) / static_cast<double>(samples);
}

}  // namespace sling
