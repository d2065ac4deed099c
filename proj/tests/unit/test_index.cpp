#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "fixtures.hpp"
#include "sling/errors.hpp"
#include "sling/index.hpp"
#include "sling/index_io.hpp"
#include "sling/query.hpp"

namespace sling {
namespace {

constexpr double kC = 0.6;

SlingIndex build(const Graph& g, double eps, std::uint64_t seed = 1, unsigned workers = 1) {
  return build_index(g, derive_parameters(eps, 0.01, kC, g.num_nodes()), seed, workers);
}

void write_bytes(const std::string& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

FormatError::Kind load_error(std::span<const std::byte> bytes, const Graph* g = nullptr) {
  try {
    deserialize_index(bytes, g);
  } catch (const FormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a format error";
  return FormatError::Kind::kIo;
}

TEST(DeriveParameters, DefaultSetting) {
  const SlingParams p = derive_parameters(0.025, 0.01, 0.6, 1000);
  EXPECT_NEAR(p.eps_d, 0.005, 1e-15);
  EXPECT_NEAR(p.theta, 0.000727, 1e-6);
  EXPECT_NEAR(p.theta, 0.000725, 0.01 * 0.000725);
  EXPECT_NEAR(p.delta_d, 1e-5, 1e-20);
  EXPECT_LE(error_budget(0.6, p.eps_d, p.theta), 0.025 * (1 + 1e-12));
}

TEST(DeriveParameters, RoundedValuesFitBudget) {
  const double lhs = error_budget(0.6, 0.005, 0.000725);
  EXPECT_NEAR(lhs, 0.02496, 1e-5);
  EXPECT_LT(lhs, 0.025);
}

TEST(DeriveParameters, LooseSetting) {
  const SlingParams p = derive_parameters(0.5, 0.01, 0.6, 10);
  EXPECT_NEAR(p.eps_d, 0.1, 1e-15);
  EXPECT_NEAR(p.theta, 0.25 * 0.09016 / 1.5492, 1e-4);
  EXPECT_NEAR(p.theta, 0.01455, 1e-5);
}

TEST(DeriveParameters, BudgetHoldsAcrossRange) {
  for (double eps : {0.001, 0.01, 0.05, 0.1, 0.3, 0.9}) {
    for (double c : {0.2, 0.6, 0.8}) {
      const SlingParams p = derive_parameters(eps, 0.01, c, 100);
      EXPECT_LE(error_budget(c, p.eps_d, p.theta), eps * (1 + 1e-12));
      EXPECT_NEAR(error_budget(c, p.eps_d, p.theta), eps, 1e-12);
    }
  }
}

TEST(DeriveParameters, Errors) {
  EXPECT_THROW(derive_parameters(1.0, 0.01, kC, 10), InvalidArgument);
  EXPECT_THROW(derive_parameters(0.1, 0.0, kC, 10), InvalidArgument);
  EXPECT_THROW(derive_parameters(0.1, 0.01, kC, 0), InvalidArgument);
  EXPECT_THROW(derive_parameters(1e-6, 0.01, kC, 10), InvalidArgument);
}

TEST(BuildIndex, FourCycle) {
  const Graph g = testing::four_cycle();
  const SlingIndex index = build(g, 0.025);
  for (double d : index.correction) EXPECT_NEAR(d, 0.4, 1e-15);
  for (const auto& s : index.hp) EXPECT_TRUE(s.reduced);
  EXPECT_EQ(index.graph_fingerprint, g.fingerprint());
}

TEST(BuildIndex, EdgelessGraph) {
  const Graph g = testing::isolated_nodes(6);
  const SlingIndex index = build(g, 0.1);
  for (double d : index.correction) EXPECT_EQ(d, 1.0);
  for (NodeId v = 0; v < 6; ++v) EXPECT_EQ(index.hp[v].entries, (std::vector<HpEntry>{{0, v, 1.0}}));
}

TEST(BuildIndex, DeterministicAcrossWorkers) {
  const Graph g = testing::random_graph(300, 2000, 12);
  const SlingIndex a = build(g, 0.05, 99, 1);
  const SlingIndex b = build(g, 0.05, 99, 8);
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize_index(a), serialize_index(b));
}

TEST(BuildIndex, ReportFilled) {
  const Graph g = testing::random_graph(100, 600, 4);
  BuildReport report;
  build_index(g, derive_parameters(0.1, 0.01, kC, g.num_nodes()), 3, 2, &report);
  EXPECT_GT(report.walk_pairs, 0u);
  EXPECT_GE(report.correction_seconds, 0.0);
}

TEST(BuildIndex, RejectsInvalidParams) {
  SlingParams p = derive_parameters(0.1, 0.01, kC, 4);
  p.theta = 0.0;
  EXPECT_THROW(build_index(testing::four_cycle(), p, 1), InvalidArgument);
}

TEST(IndexStats, FourCycle) {
  const SlingIndex index = build(testing::four_cycle(), 0.025);
  const IndexStats stats = index_stats(index);
  EXPECT_EQ(stats.nodes, 4u);
  EXPECT_EQ(stats.reduced_sets, 4u);
  EXPECT_EQ(stats.reduced_fraction, 1.0);
  std::size_t total = 0;
  for (const auto& s : index.hp) total += s.entries.size();
  EXPECT_EQ(stats.total_entries, total);
  EXPECT_EQ(stats.file_bytes, serialize_index(index).size());
  std::size_t histogram_nodes = 0;
  for (const auto& [bucket, count] : stats.histogram) histogram_nodes += count;
  EXPECT_EQ(histogram_nodes, 4u);
  EXPECT_LE(static_cast<double>(stats.max_entries), stats.size_bound);
}

TEST(Serialization, RoundTripIdentity) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Graph g = testing::random_graph(80, 400, seed);
    SlingParams p = derive_parameters(0.05, 0.02, kC, g.num_nodes());
    p.mode = seed % 2 == 0 ? Estimator::kBasic : Estimator::kAdaptive;
    p.mark_hps = seed != 3;
    const SlingIndex index = build_index(g, p, seed);
    const auto bytes = serialize_index(index);
    EXPECT_EQ(bytes.size(), serialized_size(index));
    const SlingIndex back = deserialize_index(bytes, &g);
    EXPECT_EQ(back, index);
    EXPECT_EQ(serialize_index(back), bytes);
  }
}

TEST(Serialization, FileRoundTrip) {
  const Graph g = testing::four_cycle();
  const SlingIndex index = build(g, 0.025);
  testing::TempPath path("sling-index");
  save_index(index, path.str());
  EXPECT_EQ(load_index(path.str(), &g), index);
}

TEST(Serialization, CorruptionDetected) {
  const Graph g = testing::random_graph(30, 100, 5);
  const SlingIndex index = build(g, 0.1);
  const auto bytes = serialize_index(index);

  auto truncated = bytes;
  truncated.resize(bytes.size() / 2);
  EXPECT_EQ(load_error(truncated), FormatError::Kind::kChecksum);

  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= std::byte{0x40};
  EXPECT_EQ(load_error(flipped), FormatError::Kind::kChecksum);

  auto magic = bytes;
  magic[0] = std::byte{'X'};
  EXPECT_EQ(load_error(magic), FormatError::Kind::kBadMagic);

  auto version = bytes;
  version[5] = std::byte{9};
  EXPECT_EQ(load_error(version), FormatError::Kind::kBadVersion);

  EXPECT_EQ(load_error(std::span<const std::byte>(bytes.data(), 3)), FormatError::Kind::kBadMagic);

  const Graph other = testing::random_graph(30, 100, 6);
  EXPECT_EQ(load_error(bytes, &other), FormatError::Kind::kGraphMismatch);
}

TEST(DiskIndex, MatchesMemoryAndReadsTwoRecords) {
  const Graph g = testing::random_graph(60, 300, 8);
  const SlingIndex index = build(g, 0.05);
  testing::TempPath path("sling-disk");
  save_index(index, path.str());

  const DiskIndex disk(path.str(), &g);
  const MemoryIndexView memory(index);
  EXPECT_EQ(disk.num_nodes(), 60u);
  EXPECT_EQ(disk.params(), index.params);
  EXPECT_EQ(disk.seed(), index.seed);
  EXPECT_EQ(disk.graph_fingerprint(), index.graph_fingerprint);
  EXPECT_EQ(std::vector<double>(disk.correction().begin(), disk.correction().end()), index.correction);
  EXPECT_EQ(disk.records_read(), 0u);

  const auto before = disk.records_read();
  const PairScore p = single_pair(disk, g, 3, 17);
  EXPECT_EQ(disk.records_read() - before, 2u);
  EXPECT_EQ(p.raw, single_pair(memory, g, 3, 17).raw);

  for (NodeId v = 0; v < 60; ++v) {
    HpSet scratch;
    EXPECT_EQ(disk.hp_set(v, scratch), index.hp[v]);
  }
  const auto from_disk = single_source(disk, g, 5);
  const auto in_memory = single_source(memory, g, 5);
  EXPECT_EQ(from_disk.scores, in_memory.scores);
}

TEST(DiskIndex, RejectsCorruptFile) {
  const Graph g = testing::four_cycle();
  auto bytes = serialize_index(build(g, 0.1));
  bytes[bytes.size() - 12] ^= std::byte{1};
  testing::TempPath path("sling-corrupt");
  write_bytes(path.str(), bytes);
  EXPECT_THROW(DiskIndex(path.str(), &g), FormatError);
  EXPECT_THROW(DiskIndex("/nonexistent/index.sling"), FormatError);
}

}  // namespace
}  // namespace sling
