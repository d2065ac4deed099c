#pragma once

#include <filesystem>
#include <sstream>
#include <string>

#include "sling/graph.hpp"

namespace sling::acceptance {

struct Context {
  std::filesystem::path cli;
  std::filesystem::path schemas;
  std::filesystem::path scratch;
  unsigned workers = 0;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Builds the detail line of an outcome.
class Detail {
 public:
  template <typename T>
  Detail& operator<<(const T& value) {
    out_ << value;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

Outcome check_parameters(const Context& ctx);
Outcome check_oracle_accuracy(const Context& ctx);
Outcome check_decomposition(const Context& ctx);
Outcome check_hp_bounds(const Context& ctx);
Outcome check_analytic_fixtures(const Context& ctx);
Outcome check_single_source(const Context& ctx);
Outcome check_adaptive_economy(const Context& ctx);
Outcome check_mc_baseline(const Context& ctx);
Outcome check_sharpness(const Context& ctx);
Outcome check_engineering(const Context& ctx);

// Progress notes go to stderr so stdout keeps one line per criterion.
void note(const std::string& message);

}  // namespace sling::acceptance
