#include <algorithm>
#include <fstream>

#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "sling/errors.hpp"
#include "sling/evaluation.hpp"
#include "sling/oracle.hpp"
#include "sling/parallel.hpp"

namespace sling::cli {

namespace {

struct RunResult {
  std::uint64_t seed = 0;
  eval::AccuracyReport report;
  double build_seconds = 0.0;
  double query_seconds = 0.0;
};

RunResult evaluate_once(const EvalOptions& opts, const Graph& g, const oracle::ScoreMatrix& truth,
                        std::uint64_t seed, unsigned threads) {
  RunResult run;
  run.seed = seed;
  oracle::ScoreMatrix estimate;
  if (opts.method == "mc") {
    Stopwatch build;
    const McIndex index = mc_build(g, opts.c, opts.eps, opts.delta, seed, threads, opts.mc_step_cap);
    run.build_seconds = build.seconds();
    Stopwatch query;
    estimate = eval::estimate_all_pairs(
        g.num_nodes(), [&](NodeId i, NodeId j) { return mc_pair(index, i, j); }, threads);
    run.query_seconds = query.seconds();
  } else {
    Stopwatch build;
    const SlingIndex index = build_index(g, derive_parameters(opts.eps, opts.delta, opts.c, g.num_nodes()), seed, threads);
    run.build_seconds = build.seconds();
    Stopwatch query;
    const MemoryIndexView view(index);
    const AllPairsScorer scorer(view, g, threads);
    estimate = eval::estimate_all_pairs(
        g.num_nodes(), [&](NodeId i, NodeId j) { return scorer.score(i, j); }, threads);
    run.query_seconds = query.seconds();
  }
  run.report = eval::compare(truth, estimate, opts.topk);
  return run;
}

ordered_json describe_bands(const std::array<eval::ScoreBand, 3>& bands) {
  ordered_json out = ordered_json::array();
  for (const auto& band : bands) {
    out.push_back({{"lower", band.lower}, {"upper", band.upper}, {"pairs", band.pairs},
                   {"mean_abs_error", band.mean_abs_error}});
  }
  return out;
}

ordered_json describe_topk(const std::vector<eval::TopKPrecision>& topk) {
  ordered_json out = ordered_json::object();
  for (const auto& p : topk) out[std::to_string(p.k)] = p.precision;
  return out;
}

void write_csv(const std::string& path, const EvalOptions& opts, const std::vector<RunResult>& runs) {
  std::ofstream out(path);
  if (!out) throw FormatError(FormatError::Kind::kIo, "cannot write " + path);
  out << "run,seed,max_error,band_high_mae,band_mid_mae,band_low_mae";
  for (std::size_t k : opts.topk) out << ",precision_at_" << k;
  out << ",build_seconds,query_seconds\n";
  out.precision(17);
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& rep = runs[r].report;
    out << r << ',' << runs[r].seed << ',' << rep.max_error;
    for (const auto& band : rep.bands) out << ',' << band.mean_abs_error;
    for (const auto& p : rep.topk) out << ',' << p.precision;
    out << ',' << runs[r].build_seconds << ',' << runs[r].query_seconds << '\n';
  }
}

}  // namespace

int run_eval(const EvalOptions& opts) {
  if (opts.runs == 0) throw InvalidArgument("--runs must be positive");
  const Graph g = load_graph(opts.graph);
  const unsigned threads = resolve_workers(opts.threads);
  if (g.num_nodes() > opts.max_nodes) {
    throw ResourceLimit("graph has " + std::to_string(g.num_nodes()) + " nodes; the dense oracle is capped at " +
                        std::to_string(opts.max_nodes) + " (--max-nodes)");
  }

  const int iterations = opts.oracle_tol ? oracle::power_iterations_needed(opts.c, *opts.oracle_tol) : opts.oracle_iters;
  spdlog::info("oracle: {} power-method iterations", iterations);
  Stopwatch oracle_time;
  const oracle::ScoreMatrix truth = oracle::power_method(g, opts.c, iterations, opts.max_nodes);
  const double oracle_seconds = oracle_time.seconds();

  std::vector<RunResult> runs;
  for (unsigned r = 0; r < opts.runs; ++r) {
    runs.push_back(evaluate_once(opts, g, truth, opts.seed + r, threads));
    spdlog::info("run {}: max error {:.3g}", r, runs.back().report.max_error);
  }
  if (!opts.csv.empty()) write_csv(opts.csv, opts, runs);

  // Averages over runs; the maximum error is the worst run.
  eval::AccuracyReport mean = runs.front().report;
  double build_mean = 0.0;
  double query_mean = 0.0;
  for (std::size_t b = 0; b < 3; ++b) mean.bands[b].mean_abs_error = 0.0;
  for (auto& p : mean.topk) p.precision = 0.0;
  ordered_json per_run = ordered_json::array();
  for (const auto& run : runs) {
    mean.max_error = std::max(mean.max_error, run.report.max_error);
    for (std::size_t b = 0; b < 3; ++b) mean.bands[b].mean_abs_error += run.report.bands[b].mean_abs_error / runs.size();
    for (std::size_t k = 0; k < mean.topk.size(); ++k) mean.topk[k].precision += run.report.topk[k].precision / runs.size();
    build_mean += run.build_seconds / runs.size();
    query_mean += run.query_seconds / runs.size();
    per_run.push_back({{"seed", run.seed},
                       {"max_error", run.report.max_error},
                       {"group_errors", describe_bands(run.report.bands)},
                       {"topk_precision", describe_topk(run.report.topk)},
                       {"build_seconds", run.build_seconds},
                       {"query_seconds", run.query_seconds}});
  }

  ordered_json doc;
  doc["command"] = "eval";
  doc["config"] = {{"method", opts.method},   {"eps", opts.eps},         {"delta", opts.delta},
                   {"c", opts.c},             {"runs", opts.runs},       {"oracle_iterations", iterations},
                   {"topk", opts.topk},       {"seed", opts.seed},       {"threads", threads}};
  doc["graph"] = describe_graph(g, opts.graph);
  doc["pairs"] = mean.pairs;
  doc["max_error"] = mean.max_error;
  doc["group_errors"] = describe_bands(mean.bands);
  doc["topk_precision"] = describe_topk(mean.topk);
  doc["runtimes"] = {{"oracle_seconds", oracle_seconds},
                     {"mean_build_seconds", build_mean},
                     {"mean_query_seconds", query_mean}};
  doc["runs"] = std::move(per_run);
  if (!opts.csv.empty()) doc["csv"] = opts.csv;
  print_json(doc);
  return kExitOk;
}

}  // namespace sling::cli
