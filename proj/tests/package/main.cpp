#include <iostream>
#include <vector>

#include "sling/index.hpp"
#include "sling/query.hpp"

int main() {
  const std::vector<std::pair<sling::NodeId, sling::NodeId>> edges{{2, 0}, {2, 1}};
  const sling::Graph g = sling::Graph::from_edges(3, edges);
  const sling::SlingIndex index = sling::build_index(g, sling::derive_parameters(0.05, 0.01, 0.6, 3), 1);
  const double s = sling::single_pair(sling::MemoryIndexView(index), g, 0, 1).score;
  std::cout << s << '\n';
  return s > 0.59 && s < 0.61 ? 0 : 1;
}
