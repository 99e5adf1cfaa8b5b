#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "concurflow/network.hpp"

namespace fixtures {

using concurflow::Commodity;
using concurflow::Edge;
using concurflow::Network;
using concurflow::PathSystem;

struct PathSpec {
  std::size_t commodity;
  std::vector<std::size_t> edges;
};

inline std::shared_ptr<const PathSystem> make_system(
    std::vector<std::string> nodes, std::vector<Edge> edges,
    std::vector<Commodity> commodities, const std::vector<PathSpec>& specs) {
  auto network = std::make_shared<const Network>(
      std::move(nodes), std::move(edges), std::move(commodities));
  std::vector<concurflow::Path> paths;
  for (const PathSpec& spec : specs) {
    paths.push_back(concurflow::chain_path(*network, spec.commodity, spec.edges));
  }
  return std::make_shared<const PathSystem>(network, std::move(paths));
}

// One edge s->t of capacity 1 shared by two commodities with b = (1, 2).
inline std::shared_ptr<const PathSystem> t1() {
  return make_system({"s", "t"}, {{"e", 0, 1, 1.0, true}},
                     {{"c1", 0, 1, 1.0}, {"c2", 0, 1, 2.0}},
                     {{0, {0}}, {1, {0}}});
}

// Two disjoint edges of capacity 0.5 and 1, b = (1, 1).
inline std::shared_ptr<const PathSystem> t2() {
  return make_system({"s1", "t1", "s2", "t2"},
                     {{"e1", 0, 1, 0.5, true}, {"e2", 2, 3, 1.0, true}},
                     {{"c1", 0, 1, 1.0}, {"c2", 2, 3, 1.0}},
                     {{0, {0}}, {1, {1}}});
}

// One edge of capacity 2, b = (1).
inline std::shared_ptr<const PathSystem> t3() {
  return make_system({"s", "t"}, {{"e", 0, 1, 2.0, true}}, {{"c1", 0, 1, 1.0}},
                     {{0, {0}}});
}

// One edge of the given capacity, one commodity with the given bound.
inline std::shared_ptr<const PathSystem> single_edge(double capacity,
                                                     double bound) {
  return make_system({"s", "t"}, {{"e", 0, 1, capacity, true}},
                     {{"c1", 0, 1, bound}}, {{0, {0}}});
}

}  // namespace fixtures
