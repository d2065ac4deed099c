#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sling/oracle.hpp"
#include "sling/walks.hpp"

namespace sling {
namespace {

constexpr double kC = 0.6;

TEST(SampleWalk, SourceNodeHaltsImmediately) {
  const Graph g = testing::shared_parent();
  RandomStream rng(1, 0);
  for (int r = 0; r < 100; ++r) EXPECT_EQ(sample_walk(g, 2, kC, rng), SqrtCWalk{2});
}

TEST(SampleWalk, StepsFollowInEdges) {
  const Graph g = testing::random_graph(30, 120, 4);
  RandomStream rng(2, 0);
  for (int r = 0; r < 500; ++r) {
    const SqrtCWalk w = sample_walk(g, static_cast<NodeId>(r % 30), kC, rng);
    for (std::size_t s = 1; s < w.size(); ++s) {
      const auto in = g.in_neighbors(w[s - 1]);
      EXPECT_TRUE(std::binary_search(in.begin(), in.end(), w[s]));
    }
  }
}

TEST(SampleWalk, ChainShape) {
  // a -> b: a walk from b is [b] or [b, a].
  const Graph g = testing::make_graph(2, {{0, 1}});
  RandomStream rng(3, 0);
  bool saw_short = false;
  bool saw_long = false;
  for (int r = 0; r < 200; ++r) {
    const SqrtCWalk w = sample_walk(g, 1, kC, rng);
    if (w == SqrtCWalk{1}) saw_short = true;
    else if (w == (SqrtCWalk{1, 0})) saw_long = true;
    else FAIL() << "unexpected walk of length " << w.size();
  }
  EXPECT_TRUE(saw_short);
  EXPECT_TRUE(saw_long);
}

TEST(SampleWalk, MeanLengthIsGeometric) {
  const Graph g = testing::four_cycle();
  RandomStream rng(4, 0);
  constexpr int kWalks = 100000;
  double steps = 0.0;
  for (int r = 0; r < kWalks; ++r) steps += static_cast<double>(sample_walk(g, 0, kC, rng).size() - 1);
  const double expected = std::sqrt(kC) / (1.0 - std::sqrt(kC));
  EXPECT_NEAR(expected, 3.436, 1e-3);
  EXPECT_NEAR(steps / kWalks, expected, 0.02 * expected);
}

TEST(SampleWalk, SurvivalRateIsSqrtC) {
  const Graph g = testing::complete3();
  RandomStream rng(5, 0);
  double attempts = 0.0;
  double survived = 0.0;
  for (int r = 0; r < 50000; ++r) {
    const double len = static_cast<double>(sample_walk(g, 0, kC, rng).size());
    attempts += len;          // each position draws one coin
    survived += len - 1.0;    // all but the last coin succeeded
  }
  const double rate = survived / attempts;
  const double sd = std::sqrt(std::sqrt(kC) * (1 - std::sqrt(kC)) / attempts);
  EXPECT_NEAR(rate, std::sqrt(kC), 5 * sd);
}

TEST(SampleWalk, DeterministicPerStream) {
  const Graph g = testing::random_graph(20, 60, 8);
  RandomStream a(77, 3);
  RandomStream b(77, 3);
  RandomStream other(77, 4);
  bool differs = false;
  for (int r = 0; r < 200; ++r) {
    const auto wa = sample_walk(g, 5, kC, a);
    EXPECT_EQ(wa, sample_walk(g, 5, kC, b));
    differs = differs || wa != sample_walk(g, 5, kC, other);
  }
  EXPECT_TRUE(differs);
}

TEST(WalksMeet, Examples) {
  EXPECT_TRUE(walks_meet(SqrtCWalk{3, 1}, SqrtCWalk{3}));
  EXPECT_TRUE(walks_meet(SqrtCWalk{0, 2}, SqrtCWalk{1, 2}));
  EXPECT_FALSE(walks_meet(SqrtCWalk{0, 2}, SqrtCWalk{1}));
  EXPECT_FALSE(walks_meet(SqrtCWalk{0, 1}, SqrtCWalk{1, 0}));
}

TEST(WalksMeet, TwoCycleNeverMeets) {
  const Graph g = testing::two_cycle();
  RandomStream rng(6, 0);
  for (int r = 0; r < 1000; ++r) {
    EXPECT_FALSE(walks_meet(sample_walk(g, 0, kC, rng), sample_walk(g, 1, kC, rng)));
  }
}

TEST(McPairEstimate, Examples) {
  RandomStream rng(7, 0);
  EXPECT_EQ(mc_pair_estimate(testing::random_graph(5, 10, 1), kC, 2, 2, 10, rng), 1.0);
  EXPECT_EQ(mc_pair_estimate(testing::two_cycle(), kC, 0, 1, 10000, rng), 0.0);
  const double s = mc_pair_estimate(testing::shared_parent(), kC, 0, 1, 100000, rng);
  EXPECT_NEAR(s, 0.6, 0.01);
}

TEST(McPairEstimate, UnbiasedAgainstPowerMethod) {
  constexpr std::uint64_t kSamples = 100000;
  std::size_t pairs = 0;
  std::size_t outside = 0;
  for (std::uint64_t graph_seed = 1; graph_seed <= 2; ++graph_seed) {
    const Graph g = testing::random_graph(20, 60, graph_seed);
    const auto truth = oracle::power_method(g, kC, 50);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      for (NodeId i = 0; i < g.num_nodes(); ++i) {
        for (NodeId j = i + 1; j < g.num_nodes(); ++j) {
          RandomStream rng(graph_seed * 100 + seed, i * 64 + j);
          const double s = truth(i, j);
          const double est = mc_pair_estimate(g, kC, i, j, kSamples, rng);
          const double band = 3.0 * std::sqrt(s * (1.0 - s) / kSamples) + 1e-9;
          ++pairs;
          if (std::abs(est - s) > band) ++outside;
        }
      }
    }
  }
  EXPECT_LE(static_cast<double>(outside), 0.01 * static_cast<double>(pairs)) << outside << " of " << pairs;
}

}  // namespace
}  // namespace sling
