#include <spdlog/spdlog.h>

#include "commands.hpp"

namespace sling::cli {

namespace {

ordered_json query_header(const char* command, const QueryOptions& opts, const LoadedIndex& index) {
  ordered_json doc;
  doc["command"] = command;
  doc["index"] = opts.index;
  doc["method"] = index.method();
  doc["from_disk"] = index.disk() != nullptr;
  return doc;
}

}  // namespace

int run_query_pair(const QueryOptions& opts) {
  const Graph g = load_graph(opts.graph);
  const LoadedIndex index(opts.index, g, opts.from_disk);
  const NodeId i = resolve_label(g, opts.u);
  const NodeId j = resolve_label(g, opts.v);

  Stopwatch timer;
  const PairScore p = index.pair(g, i, j);
  const double seconds = timer.seconds();

  ordered_json doc = query_header("query pair", opts, index);
  doc["u"] = opts.u;
  doc["v"] = opts.v;
  doc["score"] = p.score;
  doc["raw"] = p.raw;
  doc["seconds"] = seconds;
  if (index.disk() != nullptr) doc["records_read"] = index.disk()->records_read();
  print_json(doc);
  return kExitOk;
}

int run_query_source(const QueryOptions& opts) {
  const Graph g = load_graph(opts.graph);
  const LoadedIndex index(opts.index, g, opts.from_disk);
  const NodeId i = resolve_label(g, opts.u);

  Stopwatch timer;
  const std::vector<std::pair<NodeId, double>> scores =
      opts.top ? index.top(g, i, *opts.top) : (opts.naive ? index.source_naive(g, i) : index.source(g, i)).scores;
  const double seconds = timer.seconds();

  ordered_json doc = query_header("query source", opts, index);
  doc["source"] = opts.u;
  doc["top"] = opts.top ? ordered_json(*opts.top) : ordered_json(nullptr);
  doc["naive"] = opts.naive;
  ordered_json results = ordered_json::array();
  for (const auto& [node, score] : scores) results.push_back({{"node", g.label_of(node)}, {"score", score}});
  doc["count"] = results.size();
  doc["results"] = std::move(results);
  doc["seconds"] = seconds;
  if (index.disk() != nullptr) doc["records_read"] = index.disk()->records_read();
  print_json(doc);
  return kExitOk;
}

}  // namespace sling::cli
