#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "sling/correction.hpp"
#include "sling/hp_index.hpp"
#include "sling/index.hpp"
#include "sling/mc_baseline.hpp"
#include "sling/query.hpp"
#include "sling/random.hpp"

namespace {

using namespace sling;

constexpr double kC = 0.6;

Graph random_graph(std::size_t n, std::size_t avg_degree, std::uint64_t seed) {
  RandomStream rng(seed, n);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(n * avg_degree);
  for (std::size_t e = 0; e < n * avg_degree; ++e) {
    edges.emplace_back(static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n)));
  }
  return Graph::from_edges(n, edges);
}

// One index per (n, eps) shared by the query benchmarks.
struct Fixture {
  Graph graph;
  SlingIndex index;
};

const Fixture& fixture(std::size_t n, double eps) {
  static std::vector<std::pair<std::pair<std::size_t, double>, Fixture>> cache;
  for (const auto& [key, f] : cache) {
    if (key.first == n && key.second == eps) return f;
  }
  Graph g = random_graph(n, 5, 7);
  SlingIndex index = build_index(g, derive_parameters(eps, 0.01, kC, n), 1);
  cache.push_back({{n, eps}, Fixture{std::move(g), std::move(index)}});
  return cache.back().second;
}

double eps_arg(const benchmark::State& state) { return 1.0 / static_cast<double>(state.range(1)); }

void BM_BuildIndex(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 5, 3);
  const SlingParams p = derive_parameters(eps_arg(state), 0.01, kC, g.num_nodes());
  for (auto _ : state) benchmark::DoNotOptimize(build_index(g, p, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_nodes()));
}
BENCHMARK(BM_BuildIndex)->Args({1000, 10})->Args({1000, 40})->Args({5000, 10})->Unit(benchmark::kMillisecond);

void BM_HpSets(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 5, 3);
  const double theta = derive_parameters(eps_arg(state), 0.01, kC, g.num_nodes()).theta;
  for (auto _ : state) benchmark::DoNotOptimize(build_all_hp_sets(g, kC, theta));
}
BENCHMARK(BM_HpSets)->Args({1000, 10})->Args({1000, 40})->Args({5000, 40})->Unit(benchmark::kMillisecond);

void BM_CorrectionFactors(benchmark::State& state) {
  const Graph g = random_graph(2000, 5, 4);
  const auto mode = static_cast<Estimator>(state.range(0));
  const SlingParams p = derive_parameters(0.05, 0.01, kC, g.num_nodes());
  for (auto _ : state) benchmark::DoNotOptimize(estimate_all_d(g, kC, p.eps_d, p.delta_d, mode, 1));
  state.SetLabel(std::string(to_string(mode)));
}
BENCHMARK(BM_CorrectionFactors)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SinglePair(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)), eps_arg(state));
  const MemoryIndexView view(f.index);
  RandomStream rng(11, 0);
  const std::size_t n = f.graph.num_nodes();
  for (auto _ : state) {
    const auto i = static_cast<NodeId>(rng.below(n));
    const auto j = static_cast<NodeId>(rng.below(n));
    benchmark::DoNotOptimize(single_pair(view, f.graph, i, j));
  }
}
BENCHMARK(BM_SinglePair)->Args({5000, 10})->Args({5000, 40});

void BM_SingleSource(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)), eps_arg(state));
  const MemoryIndexView view(f.index);
  RandomStream rng(12, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_source(view, f.graph, static_cast<NodeId>(rng.below(f.graph.num_nodes()))));
  }
}
BENCHMARK(BM_SingleSource)->Args({5000, 10})->Args({5000, 40})->Unit(benchmark::kMicrosecond);

void BM_SingleSourceNaive(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)), eps_arg(state));
  const MemoryIndexView view(f.index);
  RandomStream rng(13, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        single_source_naive(view, f.graph, static_cast<NodeId>(rng.below(f.graph.num_nodes()))));
  }
}
BENCHMARK(BM_SingleSourceNaive)->Args({5000, 10})->Unit(benchmark::kMillisecond);

void BM_McPair(benchmark::State& state) {
  const Graph g = random_graph(500, 5, 5);
  const McIndex index = mc_build(g, kC, eps_arg(state), 0.01, 1);
  RandomStream rng(14, 0);
  for (auto _ : state) {
    const auto i = static_cast<NodeId>(rng.below(g.num_nodes()));
    const auto j = static_cast<NodeId>(rng.below(g.num_nodes()));
    benchmark::DoNotOptimize(mc_pair(index, i, j));
  }
}
BENCHMARK(BM_McPair)->Args({500, 10})->Args({500, 20})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
