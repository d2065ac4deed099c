#include "common.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>

#include <spdlog/spdlog.h>

#include "sling/errors.hpp"

namespace sling::cli {

Graph load_graph(const GraphSource& source) {
  spdlog::info("loading {}{}", source.path, source.undirected ? " (undirected)" : "");
  LoadOptions opts;
  opts.undirected = source.undirected;
  Graph g = load_edge_list_file(source.path, opts);
  spdlog::info("graph: {} nodes, {} edges", g.num_nodes(), g.num_edges());
  return g;
}

ordered_json describe_graph(const Graph& g, const GraphSource& source) {
  return {{"path", source.path},
          {"undirected", source.undirected},
          {"nodes", g.num_nodes()},
          {"edges", g.num_edges()},
          {"fingerprint", hex64(g.fingerprint())}};
}

NodeId resolve_label(const Graph& g, std::uint64_t label) {
  NodeId id = 0;
  if (!g.find_label(label, id)) throw InvalidArgument("node " + std::to_string(label) + " is not in the graph");
  return id;
}

std::string hex64(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(value));
  return buf;
}

ordered_json describe_params(const SlingParams& p) {
  return {{"c", p.c},
          {"eps", p.eps},
          {"delta", p.delta},
          {"eps_d", p.eps_d},
          {"theta", p.theta},
          {"delta_d", p.delta_d},
          {"gamma", p.gamma},
          {"estimator", std::string(to_string(p.mode))},
          {"space_reduction", p.space_reduction},
          {"marking", p.mark_hps}};
}

ordered_json describe_params(const McParams& p) {
  return {{"c", p.c}, {"eps", p.eps}, {"delta", p.delta}, {"t", p.t}, {"walks", p.walks}};
}

ordered_json describe_stats(const IndexStats& stats) {
  ordered_json histogram = ordered_json::array();
  for (const auto& [bucket, count] : stats.histogram) histogram.push_back({{"min_entries", bucket}, {"nodes", count}});
  return {{"nodes", stats.nodes},
          {"total_entries", stats.total_entries},
          {"max_entries", stats.max_entries},
          {"mean_entries", stats.mean_entries},
          {"size_bound", stats.size_bound},
          {"reduced_sets", stats.reduced_sets},
          {"reduced_fraction", stats.reduced_fraction},
          {"marked_entries", stats.marked_entries},
          {"file_bytes", stats.file_bytes},
          {"histogram", std::move(histogram)}};
}

LoadedIndex::LoadedIndex(const std::string& path, const Graph& g, bool from_disk) {
  const std::string magic = sniff_magic(path);
  if (magic == std::string(kMcIndexMagic, 5)) {
    if (from_disk) spdlog::warn("walk indexes are always loaded into memory; ignoring --from-disk");
    mc_ = load_mc_index(path, &g);
    return;
  }
  if (from_disk) {
    auto disk = std::make_unique<DiskIndex>(path, &g);
    disk_ = disk.get();
    view_ = std::move(disk);
  } else {
    memory_ = load_index(path, &g);
    view_ = std::make_unique<MemoryIndexView>(*memory_);
  }
}

PairScore LoadedIndex::pair(const Graph& g, NodeId i, NodeId j) const {
  if (!is_mc()) return single_pair(*view_, g, i, j);
  const double s = mc_pair(*mc_, i, j);
  return {i, j, s, s};
}

SourceResult LoadedIndex::source(const Graph& g, NodeId i) const {
  return is_mc() ? mc_source(*mc_, i) : single_source(*view_, g, i);
}

SourceResult LoadedIndex::source_naive(const Graph& g, NodeId i) const {
  return is_mc() ? mc_source(*mc_, i) : single_source_naive(*view_, g, i);
}

std::vector<std::pair<NodeId, double>> LoadedIndex::top(const Graph& g, NodeId i, std::size_t k) const {
  if (!is_mc()) return top_k(*view_, g, i, k);
  std::vector<std::pair<NodeId, double>> scores;
  for (const auto& entry : mc_source(*mc_, i).scores) {
    if (entry.first != i) scores.push_back(entry);
  }
  const auto better = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const std::size_t keep = std::min(k, scores.size());
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(keep), scores.end(), better);
  scores.resize(keep);
  return scores;
}

void print_json(const ordered_json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace sling::cli
