#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sling/correction.hpp"
#include "sling/errors.hpp"
#include "sling/oracle.hpp"

namespace sling {
namespace {

constexpr double kC = 0.6;

std::vector<double> exact_d(const Graph& g) { return oracle::exact_correction(g, kC, oracle::power_method(g, kC, 60)); }

TEST(SampleCounts, Examples) {
  EXPECT_EQ(basic_sample_count(0.6, 0.1, 0.01), 414u);
  EXPECT_EQ(adaptive_pilot_count(0.6, 0.1, 0.01), 168u);
  // mu_hat = 0 collapses mu_star to 0.
  const double expected = std::ceil((2.0 / 3.0) * 0.6 * 0.1 / 0.01 * std::log(400.0));
  EXPECT_EQ(adaptive_total_count(0.6, 0.1, 0.01, 0.0), static_cast<std::uint64_t>(expected));
  EXPECT_LT(adaptive_total_count(0.6, 0.1, 0.01, 0.05), adaptive_total_count(0.6, 0.1, 0.01, 0.2));
}

TEST(Estimator, ParseAndPrint) {
  EXPECT_EQ(parse_estimator("basic"), Estimator::kBasic);
  EXPECT_EQ(parse_estimator("adaptive"), Estimator::kAdaptive);
  EXPECT_EQ(to_string(Estimator::kBasic), "basic");
  EXPECT_THROW(parse_estimator("fast"), InvalidArgument);
}

TEST(EstimateD, RejectsLowDegree) {
  RandomStream rng(1, 0);
  EXPECT_THROW(estimate_d_basic(testing::four_cycle(), 0, kC, 0.1, 0.01, rng), InvalidArgument);
  EXPECT_THROW(estimate_d_adaptive(testing::isolated_nodes(2), 0, kC, 0.1, 0.01, rng), InvalidArgument);
}

TEST(EstimateD, BasicUsesFormulaCount) {
  RandomStream rng(2, 0);
  const auto est = estimate_d_basic(testing::complete3(), 0, kC, 0.1, 0.01, rng);
  EXPECT_EQ(est.pairs, 414u);
  EXPECT_GE(est.value, 1.0 - kC);
  EXPECT_LE(est.value, 1.0);
}

class K3Accuracy : public ::testing::TestWithParam<Estimator> {};

TEST_P(K3Accuracy, FortyEightOfFifty) {
  const Graph g = testing::complete3();
  const auto exact = exact_d(g);
  constexpr double kEpsD = 0.02;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream rng(seed, 0);
    const auto est = GetParam() == Estimator::kBasic ? estimate_d_basic(g, 0, kC, kEpsD, 0.01, rng)
                                                     : estimate_d_adaptive(g, 0, kC, kEpsD, 0.01, rng);
    if (std::abs(est.value - exact[0]) <= kEpsD) ++ok;
  }
  EXPECT_GE(ok, 48);
}

INSTANTIATE_TEST_SUITE_P(Modes, K3Accuracy, ::testing::Values(Estimator::kBasic, Estimator::kAdaptive));

TEST(EstimateAll, IsolatedNodesAllOne) {
  const auto d = estimate_all_d(testing::isolated_nodes(5), kC, 0.1, 0.01, Estimator::kAdaptive, 1);
  for (double x : d.values) EXPECT_EQ(x, 1.0);
  EXPECT_EQ(d.total_pairs(), 0u);
}

TEST(EstimateAll, FourCycleExactWithoutSampling) {
  for (Estimator mode : {Estimator::kBasic, Estimator::kAdaptive}) {
    const auto d = estimate_all_d(testing::four_cycle(), kC, 0.1, 0.01, mode, 9);
    for (double x : d.values) EXPECT_NEAR(x, 0.4, 1e-12);
    EXPECT_EQ(d.total_pairs(), 0u);
  }
}

TEST(EstimateAll, DeterministicAcrossWorkers) {
  const Graph g = testing::random_graph(150, 900, 3);
  const auto one = estimate_all_d(g, kC, 0.05, 1e-3, Estimator::kAdaptive, 42, 1);
  const auto four = estimate_all_d(g, kC, 0.05, 1e-3, Estimator::kAdaptive, 42, 4);
  EXPECT_EQ(one.values, four.values);
  EXPECT_EQ(one.pairs, four.pairs);
  const auto other = estimate_all_d(g, kC, 0.05, 1e-3, Estimator::kAdaptive, 43, 1);
  EXPECT_NE(one.values, other.values);
}

TEST(EstimateAll, RangeAndStatisticalContract) {
  constexpr double kEpsD = 0.05;
  constexpr double kDeltaD = 0.01;
  for (Estimator mode : {Estimator::kBasic, Estimator::kAdaptive}) {
    std::size_t sampled = 0;
    std::size_t violations = 0;
    for (std::uint64_t graph_seed = 1; graph_seed <= 3; ++graph_seed) {
      const Graph g = testing::random_graph(15, 60, graph_seed);
      const auto exact = exact_d(g);
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto d = estimate_all_d(g, kC, kEpsD, kDeltaD, mode, seed);
        for (NodeId k = 0; k < g.num_nodes(); ++k) {
          EXPECT_GE(d.values[k], 1.0 - kC);
          EXPECT_LE(d.values[k], 1.0);
          if (g.in_degree(k) <= 1) {
            EXPECT_NEAR(d.values[k], exact[k], 1e-12);
            EXPECT_EQ(d.pairs[k], 0u);
            continue;
          }
          ++sampled;
          if (std::abs(d.values[k] - exact[k]) > kEpsD) ++violations;
        }
      }
    }
    EXPECT_LE(static_cast<double>(violations), 3.0 * kDeltaD * static_cast<double>(sampled))
        << to_string(mode) << ": " << violations << " of " << sampled;
  }
}

TEST(Adaptive, EarlyExitOnDissimilarInNeighbours) {
  const Graph g = testing::dissimilar_fan_in(5);
  constexpr double kEpsD = 0.1;
  constexpr double kDeltaD = 0.01;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed, 0);
    const auto est = estimate_d_adaptive(g, 0, kC, kEpsD, kDeltaD, rng);
    EXPECT_EQ(est.pairs, adaptive_pilot_count(kC, kEpsD, kDeltaD));
    EXPECT_LT(est.pairs, basic_sample_count(kC, kEpsD, kDeltaD));
    EXPECT_NEAR(est.value, 1.0 - kC / 5.0, 1e-12);
  }
}

TEST(Adaptive, SampleCountGrowsWithSimilarity) {
  // Every in-neighbour of node 0 has node 5 as its only parent, so they are
  // highly similar; the pilot sees many meetings and tops up.
  testing::EdgeList edges;
  for (NodeId u = 1; u <= 4; ++u) {
    edges.emplace_back(u, 0);
    edges.emplace_back(5, u);
  }
  const Graph similar = testing::make_graph(6, edges);
  RandomStream rng(5, 0);
  const auto high = estimate_d_adaptive(similar, 0, kC, 0.02, 0.01, rng);
  RandomStream rng2(5, 0);
  const auto low = estimate_d_adaptive(testing::dissimilar_fan_in(4), 0, kC, 0.02, 0.01, rng2);
  EXPECT_GT(high.pairs, low.pairs);
  const auto exact = exact_d(similar);
  EXPECT_NEAR(high.value, exact[0], 0.02);
}

}  // namespace
}  // namespace sling
