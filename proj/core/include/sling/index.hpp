#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sling/correction.hpp"
#include "sling/graph.hpp"
#include "sling/hp_index.hpp"

namespace sling {

inline constexpr double kDefaultDecay = 0.6;
inline constexpr double kDefaultGamma = 10.0;
inline constexpr double kMinTheta = 1e-7;

// Build parameters. With eps_d and theta chosen by derive_parameters the
// error budget
//   eps_d / (1 - c) + 2 sqrt(c) / ((1 - sqrt c)(1 - c)) * theta <= eps
// holds, and every single-pair score is within eps of the truth with
// probability at least 1 - delta.
struct SlingParams {
  double eps = 0.025;
  double delta = 0.01;
  double c = kDefaultDecay;
  double eps_d = 0.005;
  double theta = 0.000725;
  double delta_d = 1e-5;
  double gamma = kDefaultGamma;
  Estimator mode = Estimator::kAdaptive;
  bool space_reduction = true;
  bool mark_hps = true;

  bool operator==(const SlingParams&) const = default;
};

// Left-hand side of the error budget above.
double error_budget(double c, double eps_d, double theta);

// eps_d = eps(1 - c)/2, theta = (eps - eps_d/(1 - c)) (1 - sqrt c)(1 - c) / (2 sqrt c),
// delta_d = delta / n. Throws InvalidArgument for out-of-range inputs or when
// theta would fall below `min_theta`.
SlingParams derive_parameters(double eps, double delta, double c, std::size_t n, double min_theta = kMinTheta);

// Throws InvalidArgument unless the parameters are usable for an n-node graph.
void validate_parameters(const SlingParams& params, std::size_t n);

// The complete index: correction factors plus one HpSet per node.
struct SlingIndex {
  SlingParams params;
  std::vector<double> correction;
  std::vector<HpSet> hp;
  std::uint64_t seed = 0;
  std::uint64_t graph_fingerprint = 0;

  std::size_t num_nodes() const noexcept { return correction.size(); }
  bool operator==(const SlingIndex&) const = default;
};

// Timings and sampling effort of one build; not part of the index file.
struct BuildReport {
  double correction_seconds = 0.0;
  double hp_seconds = 0.0;
  std::uint64_t walk_pairs = 0;
  std::size_t reduced_sets = 0;
};

// Correction factors, then HP sets, then space reduction and marking (each
// step when enabled in params). Output depends only on (graph, params, seed).
SlingIndex build_index(const Graph& g, const SlingParams& params, std::uint64_t seed, unsigned workers = 1,
                       BuildReport* report = nullptr);

struct IndexStats {
  std::size_t nodes = 0;
  std::size_t total_entries = 0;
  std::size_t max_entries = 0;
  double mean_entries = 0.0;
  std::size_t file_bytes = 0;
  std::size_t reduced_sets = 0;
  double reduced_fraction = 0.0;
  std::size_t marked_entries = 0;
  double size_bound = 0.0;  // 1 / (theta (1 - sqrt c))
  // Entry-count histogram keyed by the lower end of power-of-two buckets
  // [0], [1], [2,3], [4,7], ...
  std::map<std::size_t, std::size_t> histogram;
};

IndexStats index_stats(const SlingIndex& index);

}  // namespace sling
