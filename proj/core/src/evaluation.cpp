#include "sling/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "sling/errors.hpp"
#include "sling/parallel.hpp"

namespace sling::eval {
namespace {

void check_shapes(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate) {
  if (truth.size() != estimate.size()) throw InvalidArgument("score matrices differ in size");
}

int band_of(double truth) {
  if (truth >= kBandEdges[1]) return 0;
  if (truth >= kBandEdges[2]) return 1;
  return 2;
}

}  // namespace

oracle::ScoreMatrix estimate_all_pairs(std::size_t n, const PairEstimator& estimate, unsigned workers) {
  oracle::ScoreMatrix out(n);
  parallel_for_blocks(n, workers, 1, [&](unsigned, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      out(i, i) = 1.0;
      for (std::size_t j = i + 1; j < n; ++j) out(i, j) = estimate(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out(j, i) = out(i, j);
  }
  return out;
}

double max_error(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate) {
  check_shapes(truth, estimate);
  double worst = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t j = i + 1; j < truth.size(); ++j) worst = std::max(worst, std::abs(estimate(i, j) - truth(i, j)));
  }
  return worst;
}

std::array<ScoreBand, 3> band_errors(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate) {
  check_shapes(truth, estimate);
  std::array<ScoreBand, 3> bands;
  std::array<double, 3> sums{};
  for (int b = 0; b < 3; ++b) {
    bands[b].upper = kBandEdges[b];
    bands[b].lower = kBandEdges[b + 1];
  }
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t j = i + 1; j < truth.size(); ++j) {
      const int b = band_of(truth(i, j));
      ++bands[b].pairs;
      sums[b] += std::abs(estimate(i, j) - truth(i, j));
    }
  }
  for (int b = 0; b < 3; ++b) {
    if (bands[b].pairs > 0) bands[b].mean_abs_error = sums[b] / static_cast<double>(bands[b].pairs);
  }
  return bands;
}

std::vector<std::pair<NodeId, NodeId>> top_pairs(const oracle::ScoreMatrix& scores, std::size_t k) {
  struct Ranked {
    double score;
    NodeId i, j;
  };
  std::vector<Ranked> all;
  const std::size_t n = scores.size();
  all.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) all.push_back({scores(i, j), static_cast<NodeId>(i), static_cast<NodeId>(j)});
  }
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                    [](const Ranked& a, const Ranked& b) {
                      return std::tie(b.score, a.i, a.j) < std::tie(a.score, b.i, b.j);
                    });
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) out.emplace_back(all[r].i, all[r].j);
  return out;
}

double topk_precision(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate, std::size_t k) {
  check_shapes(truth, estimate);
  const auto expected = top_pairs(truth, k);
  if (expected.empty()) return 1.0;
  const auto got = top_pairs(estimate, k);
  const std::set<std::pair<NodeId, NodeId>> wanted(expected.begin(), expected.end());
  const auto hits = std::count_if(got.begin(), got.end(), [&](const auto& p) { return wanted.contains(p); });
  return static_cast<double>(hits) / static_cast<double>(expected.size());
}

AccuracyReport compare(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate,
                       std::span<const std::size_t> topk) {
  AccuracyReport report;
  const std::size_t n = truth.size();
  report.pairs = n * (n > 0 ? n - 1 : 0) / 2;
  report.max_error = max_error(truth, estimate);
  report.bands = band_errors(truth, estimate);
  for (std::size_t k : topk) report.topk.push_back({k, topk_precision(truth, estimate, k)});
  return report;
}

}  // namespace sling::eval
