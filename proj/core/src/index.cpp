#include "sling/index.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <string>

#include "sling/errors.hpp"
#include "sling/index_io.hpp"

namespace sling {
namespace {

bool in_unit_interval(double x) { return x > 0.0 && x < 1.0; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

double error_budget(double c, double eps_d, double theta) {
  const double sqrt_c = std::sqrt(c);
  return eps_d / (1.0 - c) + 2.0 * sqrt_c / ((1.0 - sqrt_c) * (1.0 - c)) * theta;
}

SlingParams derive_parameters(double eps, double delta, double c, std::size_t n, double min_theta) {
  if (!in_unit_interval(eps)) throw InvalidArgument("eps must lie in (0, 1)");
  if (!in_unit_interval(delta)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!in_unit_interval(c)) throw InvalidArgument("decay factor must lie in (0, 1)");
  if (n == 0) throw InvalidArgument("graph has no nodes");
  const double sqrt_c = std::sqrt(c);
  SlingParams p;
  p.eps = eps;
  p.delta = delta;
  p.c = c;
  p.eps_d = eps * (1.0 - c) / 2.0;
  p.theta = (eps - p.eps_d / (1.0 - c)) * (1.0 - sqrt_c) * (1.0 - c) / (2.0 * sqrt_c);
  p.delta_d = delta / static_cast<double>(n);
  if (p.theta < min_theta) {
    throw InvalidArgument("eps " + std::to_string(eps) + " gives theta " + std::to_string(p.theta) +
                          ", below the minimum of " + std::to_string(min_theta));
  }
  if (error_budget(c, p.eps_d, p.theta) > eps * (1.0 + 1e-12)) {
    throw InvalidArgument("derived parameters violate the error budget");
  }
  return p;
}

void validate_parameters(const SlingParams& p, std::size_t n) {
  if (!in_unit_interval(p.c)) throw InvalidArgument("decay factor must lie in (0, 1)");
  if (!in_unit_interval(p.eps)) throw InvalidArgument("eps must lie in (0, 1)");
  if (!in_unit_interval(p.delta)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!in_unit_interval(p.eps_d)) throw InvalidArgument("eps_d must lie in (0, 1)");
  if (!in_unit_interval(p.theta)) throw InvalidArgument("theta must lie in (0, 1)");
  if (!in_unit_interval(p.delta_d)) throw InvalidArgument("delta_d must lie in (0, 1)");
  if (!(p.gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (n >= (std::size_t{1} << 32) - 1) throw InvalidArgument("graph too large for 32-bit node ids");
}

SlingIndex build_index(const Graph& g, const SlingParams& params, std::uint64_t seed, unsigned workers,
                       BuildReport* report) {
  validate_parameters(params, g.num_nodes());
  SlingIndex index;
  index.params = params;
  index.seed = seed;
  index.graph_fingerprint = g.fingerprint();

  auto start = std::chrono::steady_clock::now();
  CorrectionVector d = estimate_all_d(g, params.c, params.eps_d, params.delta_d, params.mode, seed, workers);
  const double correction_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  index.hp = build_all_hp_sets(g, params.c, params.theta, workers);
  std::size_t reduced = 0;
  if (params.space_reduction) reduced = apply_space_reduction(index.hp, g, params.gamma, params.theta);
  if (params.mark_hps) mark_top_hps(index.hp, g, params.eps);
  const double hp_seconds = seconds_since(start);

  if (report != nullptr) {
    report->correction_seconds = correction_seconds;
    report->hp_seconds = hp_seconds;
    report->walk_pairs = d.total_pairs();
    report->reduced_sets = reduced;
  }
  index.correction = std::move(d.values);
  return index;
}

IndexStats index_stats(const SlingIndex& index) {
  IndexStats stats;
  stats.nodes = index.num_nodes();
  for (const HpSet& set : index.hp) {
    const std::size_t size = set.entries.size();
    stats.total_entries += size;
    stats.max_entries = std::max(stats.max_entries, size);
    stats.marked_entries += set.marked.size();
    if (set.reduced) ++stats.reduced_sets;
    const std::size_t bucket = size == 0 ? 0 : std::bit_floor(size);
    ++stats.histogram[bucket];
  }
  if (stats.nodes > 0) {
    stats.mean_entries = static_cast<double>(stats.total_entries) / static_cast<double>(stats.nodes);
    stats.reduced_fraction = static_cast<double>(stats.reduced_sets) / static_cast<double>(stats.nodes);
  }
  stats.file_bytes = serialized_size(index);
  stats.size_bound = hp_set_size_bound(index.params.c, index.params.theta);
  return stats;
}

}  // namespace sling
