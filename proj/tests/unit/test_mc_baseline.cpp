#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sling/errors.hpp"
#include "sling/mc_baseline.hpp"
#include "sling/oracle.hpp"

namespace sling {
namespace {

constexpr double kC = 0.6;

TEST(McParameters, Examples) {
  EXPECT_EQ(mc_parameters(0.6, 0.025, 0.01, 1000).t, 9);
  // 14/(3 * 0.025^2) * (ln 200 + 2 ln 1000) = 142716.58 before rounding up.
  EXPECT_EQ(mc_parameters(0.6, 0.025, 0.01, 1000).walks, 142717u);
  const double expected = std::ceil(14.0 / (3.0 * 0.1 * 0.1) * (std::log(2.0 / 0.05) + 2.0 * std::log(50.0)));
  EXPECT_EQ(mc_parameters(0.6, 0.1, 0.05, 50).walks, static_cast<std::uint64_t>(expected));
  EXPECT_THROW(mc_parameters(0.6, 1.5, 0.01, 10), InvalidArgument);
}

TEST(McBuild, WalkLayout) {
  const Graph g = testing::random_graph(15, 50, 3);
  McParams p = mc_parameters(kC, 0.2, 0.1, g.num_nodes());
  const McIndex index = mc_build(g, p, 5);
  EXPECT_EQ(index.steps.size(), g.num_nodes() * p.walks * (p.t + 1));
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (std::uint64_t w = 0; w < p.walks; ++w) {
      const auto walk = index.walk(v, w);
      ASSERT_EQ(walk.size(), static_cast<std::size_t>(p.t + 1));
      EXPECT_EQ(walk[0], v);
      bool ended = false;
      for (std::size_t s = 1; s < walk.size(); ++s) {
        if (ended) {
          EXPECT_EQ(walk[s], index.sentinel());
          continue;
        }
        if (walk[s] == index.sentinel()) {
          EXPECT_TRUE(g.in_neighbors(walk[s - 1]).empty());
          ended = true;
          continue;
        }
        const auto in = g.in_neighbors(walk[s - 1]);
        EXPECT_TRUE(std::binary_search(in.begin(), in.end(), walk[s]));
      }
    }
  }
}

TEST(McBuild, SourceNodeWalksArePadded) {
  const Graph g = testing::shared_parent();
  const McIndex index = mc_build(g, kC, 0.1, 0.1, 1);
  for (std::uint64_t w = 0; w < index.params.walks; ++w) {
    const auto walk = index.walk(2, w);
    EXPECT_EQ(walk[0], 2u);
    for (std::size_t s = 1; s < walk.size(); ++s) EXPECT_EQ(walk[s], index.sentinel());
  }
}

TEST(McBuild, MemoryGuard) {
  const Graph g = testing::random_graph(100, 300, 1);
  EXPECT_THROW(mc_build(g, kC, 0.025, 0.01, 1, 1, 1000), ResourceLimit);
}

TEST(McBuild, DeterministicAcrossWorkers) {
  const Graph g = testing::random_graph(40, 160, 2);
  const McParams p = mc_parameters(kC, 0.1, 0.1, g.num_nodes());
  const McIndex a = mc_build(g, p, 11, 1);
  EXPECT_EQ(a, mc_build(g, p, 11, 4));
  EXPECT_NE(a.steps, mc_build(g, p, 12, 1).steps);
}

TEST(McPair, Examples) {
  const Graph cycle = testing::two_cycle();
  const McIndex ci = mc_build(cycle, kC, 0.025, 0.01, 3);
  EXPECT_EQ(mc_pair(ci, 0, 0), 1.0);
  EXPECT_EQ(mc_pair(ci, 0, 1), 0.0);
  EXPECT_THROW(mc_pair(ci, 0, 2), InvalidArgument);

  const Graph sp = testing::shared_parent();
  const McIndex si = mc_build(sp, kC, 0.025, 0.01, 3);
  EXPECT_NEAR(mc_pair(si, 0, 1), 0.6, 0.025);
  EXPECT_EQ(mc_pair(si, 0, 1), mc_pair(si, 1, 0));
}

TEST(McSource, Examples) {
  const Graph g = testing::make_graph(3, {{0, 1}});
  const McIndex index = mc_build(g, kC, 0.1, 0.1, 3);
  const SourceResult r = mc_source(index, 2);
  ASSERT_EQ(r.scores.size(), 1u);
  EXPECT_EQ(r.at(2), 1.0);

  const Graph cycle = testing::four_cycle();
  const McIndex ci = mc_build(cycle, kC, 0.025, 0.01, 4);
  const auto truth = oracle::power_method(cycle, kC, 50);
  const SourceResult cr = mc_source(ci, 0);
  for (NodeId j = 0; j < 4; ++j) EXPECT_NEAR(cr.at(j), truth(0, j), 0.025);
}

TEST(McSerialization, RoundTripAndErrors) {
  const Graph g = testing::random_graph(12, 40, 6);
  const McIndex index = mc_build(g, kC, 0.2, 0.1, 8);
  const auto bytes = serialize_mc_index(index);
  EXPECT_EQ(deserialize_mc_index(bytes, &g), index);

  testing::TempPath path("sling-mc");
  save_mc_index(index, path.str());
  EXPECT_EQ(sniff_magic(path.str()), "SLMC1");
  EXPECT_EQ(load_mc_index(path.str(), &g), index);

  auto bad = bytes;
  bad[bad.size() / 2] ^= std::byte{2};
  EXPECT_THROW(deserialize_mc_index(bad), FormatError);
  const Graph other = testing::random_graph(12, 40, 7);
  EXPECT_THROW(deserialize_mc_index(bytes, &other), FormatError);
}

}  // namespace
}  // namespace sling
