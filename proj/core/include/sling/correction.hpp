#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sling/graph.hpp"
#include "sling/random.hpp"

namespace sling {

// Sampling strategy for correction factors. kBasic draws a fixed worst-case
// number of walk pairs; kAdaptive runs a small pilot first and only tops up
// when the pilot suggests in-neighbours are similar.
enum class Estimator : std::uint8_t { kBasic = 0, kAdaptive = 1 };

std::string_view to_string(Estimator e) noexcept;
Estimator parse_estimator(std::string_view name);  // "basic" | "adaptive"

struct CorrectionEstimate {
  double value = 1.0;
  std::uint64_t pairs = 0;  // walk-pair trials drawn (coinciding draws included)
};

// ceil((2c^2 + c*eps_d) / eps_d^2 * ln(2/delta_d))
std::uint64_t basic_sample_count(double c, double eps_d, double delta_d);
// ceil(14c / (3*eps_d) * ln(4/delta_d))
std::uint64_t adaptive_pilot_count(double c, double eps_d, double delta_d);
// ceil((2c^2*mu_star + (2/3)c*eps_d) / eps_d^2 * ln(4/delta_d)),
// mu_star = mu_hat + sqrt(mu_hat * eps_d)
std::uint64_t adaptive_total_count(double c, double eps_d, double delta_d, double mu_hat);

// Single-node estimators. Both require |I(k)| >= 2; estimate_all_d resolves
// the smaller in-degrees analytically. Results are clamped to [1 - c, 1].
CorrectionEstimate estimate_d_basic(const Graph& g, NodeId k, double c, double eps_d, double delta_d,
                                    RandomStream& rng);
CorrectionEstimate estimate_d_adaptive(const Graph& g, NodeId k, double c, double eps_d, double delta_d,
                                       RandomStream& rng);

struct CorrectionVector {
  std::vector<double> values;
  std::vector<std::uint64_t> pairs;  // per-node sampling effort
  double eps_d = 0.0;
  double delta_d = 0.0;
  std::uint64_t seed = 0;
  Estimator mode = Estimator::kAdaptive;

  std::uint64_t total_pairs() const noexcept;
};

// Estimates every d_k. In-degree 0 gives exactly 1 and in-degree 1 exactly
// 1 - c, with no random draws. Node k samples from stream (seed, k), so the
// output is identical for any worker count.
CorrectionVector estimate_all_d(const Graph& g, double c, double eps_d, double delta_d, Estimator mode,
                                std::uint64_t seed, unsigned workers = 1);

}  // namespace sling
