#include <gtest/gtest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sling/parallel.hpp"
#include "sling/random.hpp"

namespace sling {
namespace {

TEST(RandomStream, ReproducibleAndSeparated) {
  RandomStream a(1, 2);
  RandomStream b(1, 2);
  RandomStream c(1, 3);
  RandomStream d(2, 2);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    same_c += x == c() ? 1 : 0;
    same_d += x == d() ? 1 : 0;
  }
  EXPECT_EQ(same_c, 0);
  EXPECT_EQ(same_d, 0);
}

TEST(RandomStream, BelowIsUniform) {
  RandomStream rng(9, 0);
  constexpr int kBins = 7;
  constexpr int kDraws = 70000;
  std::vector<int> counts(kBins, 0);
  for (int i = 0; i < kDraws; ++i) {
    const auto v = rng.below(kBins);
    ASSERT_LT(v, static_cast<std::uint64_t>(kBins));
    ++counts[v];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);  // 0.999 quantile, 6 degrees of freedom
}

TEST(RandomStream, UniformAndBernoulli) {
  RandomStream rng(10, 0);
  double sum = 0.0;
  int hits = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    hits += rng.bernoulli(0.3) ? 1 : 0;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
  EXPECT_NEAR(hits / 100000.0, 0.3, 0.006);
}

TEST(ParallelForBlocks, CoversEveryIndexOnce) {
  for (unsigned workers : {1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(1003);
    parallel_for_blocks(hits.size(), workers, 10, [&](unsigned, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) hits[i].fetch_add(1);
    });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for_blocks(0, 4, 1, [](unsigned, std::size_t, std::size_t) { FAIL(); });
}

TEST(ParallelForBlocks, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for_blocks(100, 4, 1,
                                   [](unsigned, std::size_t lo, std::size_t) {
                                     if (lo == 57) throw std::runtime_error("boom");
                                   }),
               std::runtime_error);
  EXPECT_GE(resolve_workers(0), 1u);
  EXPECT_EQ(resolve_workers(5), 5u);
}

}  // namespace
}  // namespace sling
