#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "sling/errors.hpp"
#include "sling/random.hpp"

namespace sling::cli {

namespace {

// Draws query nodes uniformly or proportionally to total degree.
class NodeSampler {
 public:
  NodeSampler(const Graph& g, const std::string& sampling, RngSeed seed) : rng_(seed), n_(g.num_nodes()) {
    if (sampling == "degree") {
      prefix_.reserve(n_);
      std::uint64_t total = 0;
      for (NodeId v = 0; v < n_; ++v) {
        total += g.in_degree(v) + g.out_degree(v);
        prefix_.push_back(total);
      }
      if (total == 0) prefix_.clear();
    } else if (sampling != "uniform") {
      throw InvalidArgument("unknown sampling '" + sampling + "'");
    }
  }

  NodeId next() {
    if (prefix_.empty()) return static_cast<NodeId>(rng_.below(n_));
    const std::uint64_t x = rng_.below(prefix_.back());
    return static_cast<NodeId>(std::upper_bound(prefix_.begin(), prefix_.end(), x) - prefix_.begin());
  }

 private:
  RandomStream rng_;
  std::size_t n_;
  std::vector<std::uint64_t> prefix_;
};

struct Sample {
  NodeId u = 0;
  NodeId v = 0;
  double seconds = 0.0;
  std::size_t results = 0;
};

double percentile(std::vector<double> sorted, double q) {
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

int run_bench(const BenchOptions& opts) {
  if (opts.mode != "pair" && opts.mode != "source" && opts.mode != "source-naive") {
    throw InvalidArgument("unknown mode '" + opts.mode + "'");
  }
  if (opts.queries == 0) throw InvalidArgument("--queries must be positive");
  const Graph g = load_graph(opts.graph);
  const LoadedIndex index(opts.index, g, opts.from_disk);

  const auto run_query = [&](NodeId u, NodeId v) -> std::size_t {
    if (opts.mode == "pair") {
      const PairScore p = index.pair(g, u, v);
      return p.score > 0.0 ? 1 : 0;
    }
    return (opts.mode == "source" ? index.source(g, u) : index.source_naive(g, u)).scores.size();
  };

  NodeSampler warm(g, opts.sampling, {opts.seed, 1});
  for (std::size_t q = 0; q < opts.warmup; ++q) {
    const NodeId u = warm.next();
    run_query(u, warm.next());
  }

  NodeSampler sampler(g, opts.sampling, {opts.seed, 0});
  std::vector<Sample> samples(opts.queries);
  for (auto& s : samples) {
    s.u = sampler.next();
    s.v = sampler.next();
  }
  Stopwatch total;
  for (auto& s : samples) {
    Stopwatch timer;
    s.results = run_query(s.u, s.v);
    s.seconds = timer.seconds();
  }
  const double total_seconds = total.seconds();
  spdlog::info("{} {} queries in {:.3f} s", opts.queries, opts.mode, total_seconds);

  if (!opts.csv.empty()) {
    std::ofstream out(opts.csv);
    if (!out) throw FormatError(FormatError::Kind::kIo, "cannot write " + opts.csv);
    out << "query,u,v,mode,microseconds,results\n";
    for (std::size_t q = 0; q < samples.size(); ++q) {
      const auto& s = samples[q];
      out << q << ',' << g.label_of(s.u) << ',' << (opts.mode == "pair" ? std::to_string(g.label_of(s.v)) : "")
          << ',' << opts.mode << ',' << s.seconds * 1e6 << ',' << s.results << '\n';
    }
  }

  std::vector<double> micros;
  micros.reserve(samples.size());
  for (const auto& s : samples) micros.push_back(s.seconds * 1e6);
  ordered_json doc;
  doc["command"] = "bench";
  doc["index"] = opts.index;
  doc["method"] = index.method();
  doc["mode"] = opts.mode;
  doc["queries"] = opts.queries;
  doc["warmup"] = opts.warmup;
  doc["seed"] = opts.seed;
  doc["sampling"] = opts.sampling;
  doc["from_disk"] = index.disk() != nullptr;
  doc["latency_us"] = {{"mean", std::accumulate(micros.begin(), micros.end(), 0.0) / micros.size()},
                       {"p50", percentile(micros, 0.5)},
                       {"p95", percentile(micros, 0.95)},
                       {"p99", percentile(micros, 0.99)},
                       {"max", *std::max_element(micros.begin(), micros.end())}};
  doc["total_seconds"] = total_seconds;
  if (index.disk() != nullptr) doc["records_read"] = index.disk()->records_read();
  if (!opts.csv.empty()) doc["csv"] = opts.csv;
  print_json(doc);
  return kExitOk;
}

}  // namespace sling::cli
