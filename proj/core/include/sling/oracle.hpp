#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sling/graph.hpp"

// Exact reference computations over dense matrices. Everything here is meant
// for graphs small enough to hold n*n doubles and is used as ground truth by
// the tests and by `sling eval`.
namespace sling::oracle {

inline constexpr std::size_t kDefaultDenseCap = 20000;

// Dense symmetric n x n SimRank matrix.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(std::size_t n) : n_(n), scores_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return scores_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return scores_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {scores_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> scores_;
};

// Smallest t >= 0 with t >= log_c(eps * (1 - c)) - 1, which bounds the
// power-method error by eps.
int power_iterations_needed(double c, double eps);

// t rounds of the classic all-pairs SimRank iteration starting from the
// identity. Off-diagonal pairs involving a node without in-neighbours stay 0.
// Throws ResourceLimit when n exceeds `max_nodes`.
ScoreMatrix power_method(const Graph& g, double c, int iterations, std::size_t max_nodes = kDefaultDenseCap);

// Exact hitting probabilities h^(l)(source, target) for l = 0..max_step,
// obtained by propagating the walk distribution of every source forward.
class ExactHpTable {
 public:
  ExactHpTable(std::size_t n, int max_step, double c);

  std::size_t num_nodes() const noexcept { return n_; }
  int max_step() const noexcept { return max_step_; }
  double decay() const noexcept { return c_; }

  double at(int step, std::size_t source, std::size_t target) const noexcept {
    return table_[static_cast<std::size_t>(step) * n_ * n_ + source * n_ + target];
  }
  double& at(int step, std::size_t source, std::size_t target) noexcept {
    return table_[static_cast<std::size_t>(step) * n_ * n_ + source * n_ + target];
  }
  std::span<const double> distribution(int step, std::size_t source) const noexcept {
    return {table_.data() + static_cast<std::size_t>(step) * n_ * n_ + source * n_, n_};
  }
  // Total probability mass of the walk from `source` still alive at `step`.
  double mass(int step, std::size_t source) const noexcept;

 private:
  std::size_t n_;
  int max_step_;
  double c_;
  std::vector<double> table_;
};

ExactHpTable exact_hitting_probabilities(const Graph& g, double c, int max_step,
                                         std::size_t max_nodes = kDefaultDenseCap);

// Correction factors from exact (or near-exact) scores:
//   d_k = 1 - c/|I(k)| - c/|I(k)|^2 * sum_{i != j in I(k)} s(i, j),
// and d_k = 1 for nodes without in-neighbours.
std::vector<double> exact_correction(const Graph& g, double c, const ScoreMatrix& scores);

struct DecompositionValue {
  double score = 0.0;
  // Upper bound on the mass dropped by truncating at the table's max step:
  // c^(L+1) / (1 - c).
  double remainder_bound = 0.0;
};

// sum_{l <= L} sum_k h^(l)(i,k) * d_k * h^(l)(j,k).
DecompositionValue eval_decomposition(const ExactHpTable& hp, std::span<const double> correction, std::size_t i,
                                      std::size_t j);

// Smallest L with c^(L+1) / (1 - c) < tolerance.
int decomposition_steps_for(double c, double tolerance);

// One row per node, `separator`-joined, 17 significant digits.
void write_score_matrix(const ScoreMatrix& scores, std::ostream& out, char separator = ',');

}  // namespace sling::oracle
