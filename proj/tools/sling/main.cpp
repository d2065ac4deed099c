#include <exception>
#include <iostream>
#include <new>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "sling/errors.hpp"

namespace {

using namespace sling::cli;

const CLI::Validator kOpenUnit(
    [](std::string& value) -> std::string {
      double x = 0.0;
      if (!CLI::detail::lexical_cast(value, x)) return "not a number";
      return x > 0.0 && x < 1.0 ? std::string() : "must lie strictly between 0 and 1";
    },
    "(0,1)", "OPEN_UNIT");

void add_graph_options(CLI::App* cmd, GraphSource& graph) {
  cmd->add_option("--graph,-g", graph.path, "Edge list (one 'u v' pair per line)")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--undirected", graph.undirected, "Add the reverse of every edge");
}

int dispatch(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const sling::ResourceLimit& e) {
    spdlog::error("{}", e.what());
    return kExitResource;
  } catch (const std::bad_alloc&) {
    spdlog::error("out of memory");
    return kExitResource;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("sling");
  logger->set_pattern("[%H:%M:%S.%e] %^%l%$ %v");
  spdlog::set_default_logger(logger);

  CLI::App app{"SimRank index: build, query, evaluate and benchmark"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  bool verbose = false;
  app.add_flag("-q,--quiet", quiet, "Only log errors");
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.set_version_flag("--version", "sling 1.0.0");

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Build an index and print its statistics");
  add_graph_options(build_cmd, build.graph);
  build_cmd->add_option("--eps", build.eps, "Absolute error bound")->check(kOpenUnit)->capture_default_str();
  build_cmd->add_option("--delta", build.delta, "Failure probability")->check(kOpenUnit)->capture_default_str();
  build_cmd->add_option("--c", build.c, "Decay factor")->check(kOpenUnit)->capture_default_str();
  build_cmd->add_option("--seed", build.seed, "Random seed")->capture_default_str();
  build_cmd->add_option("--threads", build.threads, "Worker threads (0 = all cores)")->capture_default_str();
  build_cmd->add_option("--estimator", build.estimator, "Correction-factor estimator")
      ->check(CLI::IsMember({"basic", "adaptive"}))
      ->capture_default_str();
  build_cmd->add_option("--baseline", build.baseline, "Index kind")
      ->check(CLI::IsMember({"sling", "mc"}))
      ->capture_default_str();
  build_cmd->add_flag("--no-space-reduction", build.no_space_reduction, "Keep every HP set complete");
  build_cmd->add_flag("--no-marking", build.no_marking, "Skip marking of expandable entries");
  build_cmd->add_option("--mc-step-cap", build.mc_step_cap, "Largest number of stored walk steps")
      ->capture_default_str();
  build_cmd->add_option("--out,-o", build.out, "Output index file")->required();

  QueryOptions query;
  auto* query_cmd = app.add_subcommand("query", "Run a single-pair or single-source query");
  query_cmd->require_subcommand(1);
  auto* pair_cmd = query_cmd->add_subcommand("pair", "Similarity of two nodes");
  auto* source_cmd = query_cmd->add_subcommand("source", "Similarity of one node to all others");
  for (auto* cmd : {pair_cmd, source_cmd}) {
    add_graph_options(cmd, query.graph);
    cmd->add_option("-i,--index", query.index, "Index file")->required()->check(CLI::ExistingFile);
    cmd->add_option("u", query.u, "Source node label")->required();
    cmd->add_flag("--from-disk", query.from_disk, "Read node records from the file on demand");
  }
  pair_cmd->add_option("v", query.v, "Target node label")->required();
  source_cmd->add_option("--top", query.top, "Only the best K other nodes");
  source_cmd->add_flag("--naive", query.naive, "One pair query per node instead of forward propagation");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Accuracy against the power-method oracle");
  add_graph_options(eval_cmd, eval.graph);
  eval_cmd->add_option("--method", eval.method, "Method to evaluate")
      ->check(CLI::IsMember({"sling", "mc"}))
      ->capture_default_str();
  eval_cmd->add_option("--eps", eval.eps, "Absolute error bound")->check(kOpenUnit)->capture_default_str();
  eval_cmd->add_option("--delta", eval.delta, "Failure probability")->check(kOpenUnit)->capture_default_str();
  eval_cmd->add_option("--c", eval.c, "Decay factor")->check(kOpenUnit)->capture_default_str();
  eval_cmd->add_option("--runs", eval.runs, "Independent builds (seed, seed+1, ...)")->capture_default_str();
  auto* iters = eval_cmd->add_option("--oracle-iters", eval.oracle_iters, "Power-method iterations")
                    ->check(CLI::NonNegativeNumber)
                    ->capture_default_str();
  eval_cmd->add_option("--oracle-tol", eval.oracle_tol, "Derive the iteration count from this tolerance")
      ->check(kOpenUnit)
      ->excludes(iters);
  eval_cmd->add_option("--topk", eval.topk, "Top-k precision cut-offs")->delimiter(',')->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed, "Seed of the first run")->capture_default_str();
  eval_cmd->add_option("--threads", eval.threads, "Worker threads (0 = all cores)")->capture_default_str();
  eval_cmd->add_option("--max-nodes", eval.max_nodes, "Refuse larger graphs (dense oracle)")->capture_default_str();
  eval_cmd->add_option("--mc-step-cap", eval.mc_step_cap, "Largest number of stored walk steps")
      ->capture_default_str();
  eval_cmd->add_option("--csv", eval.csv, "Per-run CSV output");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time a seeded random query workload");
  add_graph_options(bench_cmd, bench.graph);
  bench_cmd->add_option("-i,--index", bench.index, "Index file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--queries", bench.queries, "Timed queries")->capture_default_str();
  bench_cmd->add_option("--mode", bench.mode, "Query kind")
      ->check(CLI::IsMember({"pair", "source", "source-naive"}))
      ->capture_default_str();
  bench_cmd->add_option("--warmup", bench.warmup, "Untimed queries run first")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Workload seed")->capture_default_str();
  bench_cmd->add_option("--sampling", bench.sampling, "Query node distribution")
      ->check(CLI::IsMember({"uniform", "degree"}))
      ->capture_default_str();
  bench_cmd->add_flag("--from-disk", bench.from_disk, "Read node records from the file on demand");
  bench_cmd->add_option("--csv", bench.csv, "Per-query CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  spdlog::set_level(quiet ? spdlog::level::err : verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*build_cmd) return run_build(build);
    if (*pair_cmd) return run_query_pair(query);
    if (*source_cmd) return run_query_source(query);
    if (*eval_cmd) return run_eval(eval);
    if (*bench_cmd) return run_bench(bench);
  } catch (...) {
    return dispatch(std::current_exception());
  }
  return kExitUsage;
}
