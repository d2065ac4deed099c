#include "sling/correction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sling/errors.hpp"
#include "sling/parallel.hpp"
#include "sling/walks.hpp"

namespace sling {
namespace {

void check_inputs(const Graph& g, NodeId k, double c, double eps_d, double delta_d) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("decay factor must lie in (0, 1)");
  if (!(eps_d > 0.0 && eps_d < 1.0)) throw InvalidArgument("eps_d must lie in (0, 1)");
  if (!(delta_d > 0.0 && delta_d < 1.0)) throw InvalidArgument("delta_d must lie in (0, 1)");
  if (k >= g.num_nodes()) throw InvalidArgument("node out of range");
  if (g.in_degree(k) < 2) throw InvalidArgument("sampling estimator needs at least two in-neighbours");
}

std::uint64_t ceil_count(double x) { return static_cast<std::uint64_t>(std::ceil(x)); }

// Draws `trials` in-neighbour pairs of k and counts those whose walks meet.
// A pair that picks the same in-neighbour twice is a trial that counts 0.
std::uint64_t count_meetings(const Graph& g, NodeId k, double sqrt_c, std::uint64_t trials, RandomStream& rng) {
  const auto in = g.in_neighbors(k);
  std::uint64_t met = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const NodeId a = in[rng.below(in.size())];
    const NodeId b = in[rng.below(in.size())];
    if (a != b && sample_pair_meets(g, a, b, sqrt_c, rng)) ++met;
  }
  return met;
}

double finish(double c, std::size_t degree, double mu) {
  const double d = 1.0 - c / static_cast<double>(degree) - c * mu;
  return std::clamp(d, 1.0 - c, 1.0);
}

}  // namespace

std::string_view to_string(Estimator e) noexcept { return e == Estimator::kBasic ? "basic" : "adaptive"; }

Estimator parse_estimator(std::string_view name) {
  if (name == "basic") return Estimator::kBasic;
  if (name == "adaptive") return Estimator::kAdaptive;
  throw InvalidArgument("unknown estimator '" + std::string(name) + "' (expected basic or adaptive)");
}

std::uint64_t basic_sample_count(double c, double eps_d, double delta_d) {
  return ceil_count((2.0 * c * c + c * eps_d) / (eps_d * eps_d) * std::log(2.0 / delta_d));
}

std::uint64_t adaptive_pilot_count(double c, double eps_d, double delta_d) {
  return ceil_count(14.0 * c / (3.0 * eps_d) * std::log(4.0 / delta_d));
}

std::uint64_t adaptive_total_count(double c, double eps_d, double delta_d, double mu_hat) {
  const double mu_star = mu_hat + std::sqrt(mu_hat * eps_d);
  return ceil_count((2.0 * c * c * mu_star + (2.0 / 3.0) * c * eps_d) / (eps_d * eps_d) * std::log(4.0 / delta_d));
}

CorrectionEstimate estimate_d_basic(const Graph& g, NodeId k, double c, double eps_d, double delta_d,
                                    RandomStream& rng) {
  check_inputs(g, k, c, eps_d, delta_d);
  const std::uint64_t trials = basic_sample_count(c, eps_d, delta_d);
  const std::uint64_t met = count_meetings(g, k, std::sqrt(c), trials, rng);
  return {finish(c, g.in_degree(k), static_cast<double>(met) / static_cast<double>(trials)), trials};
}

CorrectionEstimate estimate_d_adaptive(const Graph& g, NodeId k, double c, double eps_d, double delta_d,
                                       RandomStream& rng) {
  check_inputs(g, k, c, eps_d, delta_d);
  const double sqrt_c = std::sqrt(c);
  const std::uint64_t pilot = adaptive_pilot_count(c, eps_d, delta_d);
  std::uint64_t met = count_meetings(g, k, sqrt_c, pilot, rng);
  const double mu_hat = static_cast<double>(met) / static_cast<double>(pilot);
  if (mu_hat <= eps_d) return {finish(c, g.in_degree(k), mu_hat), pilot};

  // The top-up target can fall below the pilot size for small c; the pilot
  // pairs are never discarded, so the denominator is whichever is larger.
  const std::uint64_t total = std::max(pilot, adaptive_total_count(c, eps_d, delta_d, mu_hat));
  met += count_meetings(g, k, sqrt_c, total - pilot, rng);
  return {finish(c, g.in_degree(k), static_cast<double>(met) / static_cast<double>(total)), total};
}

std::uint64_t CorrectionVector::total_pairs() const noexcept {
  return std::accumulate(pairs.begin(), pairs.end(), std::uint64_t{0});
}

CorrectionVector estimate_all_d(const Graph& g, double c, double eps_d, double delta_d, Estimator mode,
                                std::uint64_t seed, unsigned workers) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("decay factor must lie in (0, 1)");
  if (!(eps_d > 0.0 && eps_d < 1.0)) throw InvalidArgument("eps_d must lie in (0, 1)");
  if (!(delta_d > 0.0 && delta_d < 1.0)) throw InvalidArgument("delta_d must lie in (0, 1)");
  const std::size_t n = g.num_nodes();
  CorrectionVector out;
  out.values.assign(n, 1.0);
  out.pairs.assign(n, 0);
  out.eps_d = eps_d;
  out.delta_d = delta_d;
  out.seed = seed;
  out.mode = mode;
  parallel_for_blocks(n, workers, 64, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto node = static_cast<NodeId>(k);
      const std::size_t degree = g.in_degree(node);
      if (degree == 0) continue;
      if (degree == 1) {
        out.values[k] = 1.0 - c;
        continue;
      }
      RandomStream rng(seed, k);
      const CorrectionEstimate est = mode == Estimator::kBasic
                                         ? estimate_d_basic(g, node, c, eps_d, delta_d, rng)
                                         : estimate_d_adaptive(g, node, c, eps_d, delta_d, rng);
      out.values[k] = est.value;
      out.pairs[k] = est.pairs;
    }
  });
  return out;
}

}  // namespace sling
