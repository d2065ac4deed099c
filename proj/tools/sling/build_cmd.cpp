#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "sling/errors.hpp"
#include "sling/parallel.hpp"

namespace sling::cli {

namespace {

int build_mc(const BuildOptions& opts, const Graph& g, ordered_json doc, const Stopwatch& total) {
  const McParams params = mc_parameters(opts.c, opts.eps, opts.delta, g.num_nodes());
  spdlog::info("monte carlo baseline: t = {}, {} walks per node", params.t, params.walks);
  Stopwatch walk_time;
  const McIndex index = mc_build(g, params, opts.seed, opts.threads, opts.mc_step_cap);
  const double walk_seconds = walk_time.seconds();
  Stopwatch write_time;
  save_mc_index(index, opts.out);
  doc["params"] = describe_params(params);
  doc["timings"] = {{"walks_seconds", walk_seconds},
                    {"write_seconds", write_time.seconds()},
                    {"total_seconds", total.seconds()}};
  doc["stats"] = {{"nodes", index.n}, {"stored_steps", index.steps.size()},
                  {"file_bytes", serialize_mc_index(index).size()}};
  print_json(doc);
  return kExitOk;
}

}  // namespace

int run_build(const BuildOptions& opts) {
  Stopwatch total;
  const Graph g = load_graph(opts.graph);
  const unsigned threads = resolve_workers(opts.threads);

  ordered_json doc;
  doc["command"] = "build";
  doc["baseline"] = opts.baseline;
  doc["graph"] = describe_graph(g, opts.graph);
  doc["seed"] = opts.seed;
  doc["threads"] = threads;
  doc["out"] = opts.out;
  if (opts.baseline == "mc") return build_mc(opts, g, std::move(doc), total);

  SlingParams params = derive_parameters(opts.eps, opts.delta, opts.c, g.num_nodes());
  params.mode = parse_estimator(opts.estimator);
  params.space_reduction = !opts.no_space_reduction;
  params.mark_hps = !opts.no_marking;
  spdlog::info("eps_d = {:.6g}, theta = {:.6g}, delta_d = {:.6g}", params.eps_d, params.theta, params.delta_d);

  BuildReport report;
  const SlingIndex index = build_index(g, params, opts.seed, threads, &report);
  Stopwatch write_time;
  save_index(index, opts.out);
  spdlog::info("wrote {}", opts.out);

  doc["params"] = describe_params(params);
  doc["timings"] = {{"correction_seconds", report.correction_seconds},
                    {"hp_seconds", report.hp_seconds},
                    {"write_seconds", write_time.seconds()},
                    {"total_seconds", total.seconds()}};
  doc["walk_pairs"] = report.walk_pairs;
  doc["stats"] = describe_stats(index_stats(index));
  print_json(doc);
  return kExitOk;
}

}  // namespace sling::cli
