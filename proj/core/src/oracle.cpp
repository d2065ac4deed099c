#include "sling/oracle.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "sling/errors.hpp"

namespace sling::oracle {
namespace {

void check_decay(double c) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("decay factor must lie in (0, 1)");
}

void check_cap(std::size_t n, std::size_t max_nodes) {
  if (n > max_nodes) {
    throw ResourceLimit("dense oracle refused: " + std::to_string(n) + " nodes exceeds the cap of " +
                        std::to_string(max_nodes));
  }
}

}  // namespace

int power_iterations_needed(double c, double eps) {
  check_decay(c);
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  const double bound = std::log(eps * (1.0 - c)) / std::log(c) - 1.0;
  if (bound <= 0.0) return 0;
  return static_cast<int>(std::ceil(bound));
}

ScoreMatrix power_method(const Graph& g, double c, int iterations, std::size_t max_nodes) {
  check_decay(c);
  if (iterations < 0) throw InvalidArgument("iteration count must be non-negative");
  const std::size_t n = g.num_nodes();
  check_cap(n, max_nodes);

  ScoreMatrix current(n);
  for (std::size_t i = 0; i < n; ++i) current(i, i) = 1.0;
  ScoreMatrix half(n);  // half(k, j) = mean of current(k, l) over l in I(j)
  ScoreMatrix next(n);

  for (int round = 0; round < iterations; ++round) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto row = current.row(k);
      for (std::size_t j = 0; j < n; ++j) {
        const auto in_j = g.in_neighbors(static_cast<NodeId>(j));
        double sum = 0.0;
        for (NodeId l : in_j) sum += row[l];
        half(k, j) = in_j.empty() ? 0.0 : sum / static_cast<double>(in_j.size());
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto in_i = g.in_neighbors(static_cast<NodeId>(i));
      for (std::size_t j = 0; j < n; ++j) next(i, j) = 0.0;
      if (in_i.empty()) continue;
      for (NodeId k : in_i) {
        const auto row = half.row(k);
        for (std::size_t j = 0; j < n; ++j) next(i, j) += row[j];
      }
      const double scale = c / static_cast<double>(in_i.size());
      for (std::size_t j = 0; j < n; ++j) next(i, j) *= scale;
    }
    // Exact symmetry regardless of summation order.
    for (std::size_t i = 0; i < n; ++i) {
      next(i, i) = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double avg = 0.5 * (next(i, j) + next(j, i));
        next(i, j) = avg;
        next(j, i) = avg;
      }
    }
    std::swap(current, next);
  }
  return current;
}

ExactHpTable::ExactHpTable(std::size_t n, int max_step, double c)
    : n_(n), max_step_(max_step), c_(c), table_(static_cast<std::size_t>(max_step + 1) * n * n, 0.0) {}

double ExactHpTable::mass(int step, std::size_t source) const noexcept {
  double total = 0.0;
  for (double p : distribution(step, source)) total += p;
  return total;
}

ExactHpTable exact_hitting_probabilities(const Graph& g, double c, int max_step, std::size_t max_nodes) {
  check_decay(c);
  if (max_step < 0) throw InvalidArgument("max step must be non-negative");
  const std::size_t n = g.num_nodes();
  check_cap(n, max_nodes);
  if (static_cast<double>(max_step + 1) * static_cast<double>(n) * static_cast<double>(n) > double(1ULL << 31)) {
    throw ResourceLimit("exact hitting-probability table too large");
  }
  const double sqrt_c = std::sqrt(c);
  ExactHpTable table(n, max_step, c);
  for (std::size_t source = 0; source < n; ++source) {
    table.at(0, source, source) = 1.0;
    for (int step = 0; step < max_step; ++step) {
      for (std::size_t x = 0; x < n; ++x) {
        const double p = table.at(step, source, x);
        if (p == 0.0) continue;
        const auto in_x = g.in_neighbors(static_cast<NodeId>(x));
        if (in_x.empty()) continue;  // the walk halts here
        const double share = p * sqrt_c / static_cast<double>(in_x.size());
        for (NodeId y : in_x) table.at(step + 1, source, y) += share;
      }
    }
  }
  return table;
}

std::vector<double> exact_correction(const Graph& g, double c, const ScoreMatrix& scores) {
  check_decay(c);
  const std::size_t n = g.num_nodes();
  std::vector<double> d(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto in_k = g.in_neighbors(static_cast<NodeId>(k));
    if (in_k.empty()) continue;
    const double degree = static_cast<double>(in_k.size());
    double cross = 0.0;
    for (NodeId a : in_k) {
      for (NodeId b : in_k) {
        if (a != b) cross += scores(a, b);
      }
    }
    d[k] = 1.0 - c / degree - c / (degree * degree) * cross;
  }
  return d;
}

DecompositionValue eval_decomposition(const ExactHpTable& hp, std::span<const double> correction, std::size_t i,
                                      std::size_t j) {
  DecompositionValue out;
  for (int step = 0; step <= hp.max_step(); ++step) {
    const auto hi = hp.distribution(step, i);
    const auto hj = hp.distribution(step, j);
    for (std::size_t k = 0; k < hp.num_nodes(); ++k) out.score += hi[k] * correction[k] * hj[k];
  }
  const double c = hp.decay();
  out.remainder_bound = std::pow(c, hp.max_step() + 1) / (1.0 - c);
  return out;
}

int decomposition_steps_for(double c, double tolerance) {
  check_decay(c);
  int steps = 0;
  while (std::pow(c, steps + 1) / (1.0 - c) >= tolerance) ++steps;
  return steps;
}

void write_score_matrix(const ScoreMatrix& scores, std::ostream& out, char separator) {
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (j > 0) out << separator;
      out << scores(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace sling::oracle
