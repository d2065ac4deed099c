#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace sling::cli {

struct BuildOptions {
  GraphSource graph;
  double eps = 0.025;
  double delta = 0.01;
  double c = kDefaultDecay;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string estimator = "adaptive";
  std::string baseline = "sling";
  bool no_space_reduction = false;
  bool no_marking = false;
  std::uint64_t mc_step_cap = kDefaultMcStepCap;
  std::string out;
};

struct QueryOptions {
  GraphSource graph;
  std::string index;
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::optional<std::size_t> top;
  bool from_disk = false;
  bool naive = false;
};

struct EvalOptions {
  GraphSource graph;
  std::string method = "sling";
  double eps = 0.025;
  double delta = 0.01;
  double c = kDefaultDecay;
  unsigned runs = 10;
  int oracle_iters = 50;
  std::optional<double> oracle_tol;
  std::vector<std::size_t> topk{10, 100, 1000};
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t max_nodes = 5000;
  std::uint64_t mc_step_cap = kDefaultMcStepCap;
  std::string csv;
};

struct BenchOptions {
  GraphSource graph;
  std::string index;
  std::size_t queries = 1000;
  std::string mode = "pair";
  std::size_t warmup = 10;
  std::uint64_t seed = 1;
  std::string sampling = "uniform";
  bool from_disk = false;
  std::string csv;
};

int run_build(const BuildOptions& opts);
int run_query_pair(const QueryOptions& opts);
int run_query_source(const QueryOptions& opts);
int run_eval(const EvalOptions& opts);
int run_bench(const BenchOptions& opts);

}  // namespace sling::cli
