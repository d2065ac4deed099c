#include "sling/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "sling/errors.hpp"
#include "sling/random.hpp"

namespace sling {
namespace {

void build_csr(std::size_t n, std::vector<std::pair<NodeId, NodeId>>& edges, std::vector<std::size_t>& offsets,
               std::vector<NodeId>& targets) {
  // `edges` holds (key, neighbour) and is sorted + deduplicated here.
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  offsets.assign(n + 1, 0);
  targets.resize(edges.size());
  for (const auto& [key, nbr] : edges) ++offsets[key + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  for (std::size_t e = 0; e < edges.size(); ++e) targets[e] = edges[e].second;
}

bool is_blank(char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\v' || ch == '\f'; }

// Splits on blanks; returns the number of tokens found (stores at most 3).
int tokenize(std::string_view line, std::string_view (&tokens)[3]) {
  int count = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_blank(line[j])) ++j;
    if (count < 3) tokens[count] = line.substr(i, j - i);
    ++count;
    i = j;
  }
  return count;
}

std::uint64_t parse_label(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("invalid node label '" + std::string(token) + "'", line_no);
  }
  return value;
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
  std::vector<std::uint64_t> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = v;
  return from_edges(n, edges, std::move(labels));
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                        std::vector<std::uint64_t> labels) {
  if (labels.size() != n) throw InvalidArgument("label count does not match node count");
  if (n >= std::size_t{0xffffffffu}) throw InvalidArgument("node count must be below 2^32 - 1");
  if (!std::is_sorted(labels.begin(), labels.end()) ||
      std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw InvalidArgument("labels must be strictly increasing");
  }
  Graph g;
  std::vector<std::pair<NodeId, NodeId>> by_source;
  std::vector<std::pair<NodeId, NodeId>> by_target;
  by_source.reserve(edges.size());
  by_target.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidArgument("edge endpoint out of range");
    by_source.emplace_back(u, v);
    by_target.emplace_back(v, u);
  }
  build_csr(n, by_source, g.out_offsets_, g.out_targets_);
  build_csr(n, by_target, g.in_offsets_, g.in_targets_);
  g.labels_ = std::move(labels);
  return g;
}

std::size_t Graph::two_hop_in_size(NodeId v) const noexcept {
  std::size_t eta = in_degree(v);
  for (NodeId x : in_neighbors(v)) eta += in_degree(x);
  return eta;
}

bool Graph::find_label(std::uint64_t label, NodeId& out) const noexcept {
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return false;
  out = static_cast<NodeId>(it - labels_.begin());
  return true;
}

std::uint64_t Graph::fingerprint() const noexcept {
  std::uint64_t h = hash_combine(0x534c4e47ULL, num_nodes());
  h = hash_combine(h, num_edges());
  for (std::size_t u = 0; u < num_nodes(); ++u) {
    h = hash_combine(h, labels_[u]);
    for (NodeId v : out_neighbors(static_cast<NodeId>(u))) h = hash_combine(h, (std::uint64_t{u} << 32) | v);
  }
  return h;
}

Graph load_edge_list(std::istream& in, const LoadOptions& opts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r\v\f");
    if (first == std::string_view::npos || view[first] == opts.comment_prefix) continue;
    std::string_view tokens[3];
    const int count = tokenize(view, tokens);
    if (count != 2) {
      throw ParseError("expected two node labels, found " + std::to_string(count) + " fields", line_no);
    }
    raw.emplace_back(parse_label(tokens[0], line_no), parse_label(tokens[1], line_no));
  }
  if (in.bad()) throw ParseError("read error");
  if (raw.empty()) throw ParseError("edge list contains no edges");

  std::vector<std::uint64_t> labels;
  labels.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    labels.push_back(u);
    labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() >= std::size_t{0xffffffffu}) throw ResourceLimit("too many distinct node labels");

  auto dense = [&](std::uint64_t label) {
    return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(opts.undirected ? raw.size() * 2 : raw.size());
  for (const auto& [u, v] : raw) {
    const NodeId a = dense(u);
    const NodeId b = dense(v);
    edges.emplace_back(a, b);
    if (opts.undirected && a != b) edges.emplace_back(b, a);
  }
  const std::size_t n = labels.size();
  return Graph::from_edges(n, edges, std::move(labels));
}

Graph load_edge_list_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  return load_edge_list(in, opts);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.out_neighbors(static_cast<NodeId>(u))) {
      out << g.label_of(static_cast<NodeId>(u)) << ' ' << g.label_of(v) << '\n';
    }
  }
}

}  // namespace sling
