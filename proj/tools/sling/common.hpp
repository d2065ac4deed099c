#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "sling/graph.hpp"
#include "sling/index.hpp"
#include "sling/index_io.hpp"
#include "sling/mc_baseline.hpp"
#include "sling/query.hpp"

namespace sling::cli {

using nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitResource = 3;

struct GraphSource {
  std::string path;
  bool undirected = false;
};

Graph load_graph(const GraphSource& source);
ordered_json describe_graph(const Graph& g, const GraphSource& source);

// Dense id for a raw label from the edge list.
NodeId resolve_label(const Graph& g, std::uint64_t label);

std::string hex64(std::uint64_t value);
ordered_json describe_params(const SlingParams& p);
ordered_json describe_params(const McParams& p);
ordered_json describe_stats(const IndexStats& stats);

// An index file opened for querying: a SLING index (in memory or read from
// disk per query) or a Monte Carlo walk index.
class LoadedIndex {
 public:
  LoadedIndex(const std::string& path, const Graph& g, bool from_disk);

  bool is_mc() const noexcept { return mc_.has_value(); }
  std::string method() const { return is_mc() ? "mc" : "sling"; }
  const IndexView* view() const noexcept { return view_.get(); }
  const DiskIndex* disk() const noexcept { return disk_; }

  PairScore pair(const Graph& g, NodeId i, NodeId j) const;
  SourceResult source(const Graph& g, NodeId i) const;
  SourceResult source_naive(const Graph& g, NodeId i) const;
  // Best k nodes other than i, score desc then id asc.
  std::vector<std::pair<NodeId, double>> top(const Graph& g, NodeId i, std::size_t k) const;

 private:
  std::optional<SlingIndex> memory_;
  std::optional<McIndex> mc_;
  std::unique_ptr<IndexView> view_;
  const DiskIndex* disk_ = nullptr;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void print_json(const ordered_json& doc);

}  // namespace sling::cli
