#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sling/graph.hpp"
#include "sling/oracle.hpp"

// Accuracy measures comparing an approximate all-pairs matrix with ground
// truth: maximum absolute error, mean error per ground-truth score band and
// precision of the top-k pairs.
namespace sling::eval {

struct ScoreBand {
  double lower = 0.0;  // inclusive
  double upper = 0.0;  // exclusive, except the top band which includes 1
  std::size_t pairs = 0;
  double mean_abs_error = 0.0;
};

// Bands [0.1, 1], [0.01, 0.1) and [0, 0.01), in that order.
inline constexpr std::array<double, 4> kBandEdges = {1.0, 0.1, 0.01, 0.0};

struct TopKPrecision {
  std::size_t k = 0;
  double precision = 0.0;
};

struct AccuracyReport {
  std::size_t pairs = 0;  // unordered pairs i < j
  double max_error = 0.0;
  std::array<ScoreBand, 3> bands{};
  std::vector<TopKPrecision> topk;
};

using PairEstimator = std::function<double(NodeId, NodeId)>;

// Fills the upper triangle with estimate(i, j) for i < j, mirrors it and puts
// 1 on the diagonal. Rows are computed in parallel; each cell is written once.
oracle::ScoreMatrix estimate_all_pairs(std::size_t n, const PairEstimator& estimate, unsigned workers = 1);

// Largest |estimate - truth| over all i < j.
double max_error(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate);

std::array<ScoreBand, 3> band_errors(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate);

// Pairs i < j ranked by score descending, then (i, j) ascending.
std::vector<std::pair<NodeId, NodeId>> top_pairs(const oracle::ScoreMatrix& scores, std::size_t k);

// |top_k(truth) intersect top_k(estimate)| / k, with k capped at the pair count.
double topk_precision(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate, std::size_t k);

AccuracyReport compare(const oracle::ScoreMatrix& truth, const oracle::ScoreMatrix& estimate,
                       std::span<const std::size_t> topk);

}  // namespace sling::eval
