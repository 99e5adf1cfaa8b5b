#include "concurflow/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "concurflow/errors.hpp"

namespace concurflow {

namespace {

constexpr double kCapacityMin = 0.1;
constexpr double kCapacityMax = 2.0;
constexpr std::size_t kPlacementAttempts = 200;

// std::uniform_*_distribution output differs between standard libraries,
// so draws are derived from raw engine output.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t below(std::size_t n) { return engine_() % n; }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

// Two decimals keep generated files readable.
double round_cents(double x, double lo, double hi) {
  return std::clamp(std::round(x * 100.0) / 100.0, lo, hi);
}

}  // namespace

Instance generate_instance(const GeneratorParams& params) {
  const std::size_t n = params.nodes;
  if (n < 2) throw ValidationError("generator needs at least 2 nodes");
  const std::size_t pairs = n * (n - 1) / 2;
  if (params.edges < 1 || params.edges > pairs) {
    throw ValidationError("edge count must lie in [1, " +
                          std::to_string(pairs) + "] for " +
                          std::to_string(n) + " nodes");
  }
  if (params.commodities < 1) {
    throw ValidationError("generator needs at least 1 commodity");
  }
  if (params.max_paths < 1) throw ValidationError("max paths must be >= 1");
  if (!(params.bound_min > 0.0 && params.bound_min <= params.bound_max &&
        std::isfinite(params.bound_max))) {
    throw ValidationError("bound range must satisfy 0 < min <= max < inf");
  }

  Draw draw(params.seed);
  std::vector<std::string> nodes;
  for (std::size_t v = 0; v < n; ++v) nodes.push_back("v" + std::to_string(v));

  std::vector<std::pair<NodeIndex, NodeIndex>> candidates;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) candidates.emplace_back(u, v);
  }
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < params.edges; ++e) {
    const std::size_t pick = e + draw.below(candidates.size() - e);
    std::swap(candidates[e], candidates[pick]);
    auto [u, v] = candidates[e];
    if (draw.coin()) std::swap(u, v);
    Edge edge;
    edge.id = "e" + std::to_string(e);
    edge.tail = u;
    edge.head = v;
    edge.directed = draw.coin();
    edge.capacity = round_cents(draw.uniform(kCapacityMin, kCapacityMax),
                                kCapacityMin, kCapacityMax);
    edges.push_back(std::move(edge));
  }

  std::vector<Commodity> commodities;
  std::vector<Path> paths;
  for (std::size_t i = 0; i < params.commodities; ++i) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const NodeIndex s = draw.below(n);
      NodeIndex t = draw.below(n - 1);
      if (t >= s) ++t;
      const double bound =
          round_cents(draw.uniform(params.bound_min, params.bound_max),
                      params.bound_min, params.bound_max);
      Network probe(nodes, edges, {Commodity{"probe", s, t, bound}});
      std::vector<Path> found = enumerate_paths(probe, 0, n - 1,
                                                params.max_paths);
      if (found.empty()) continue;
      const CommodityIndex index = commodities.size();
      commodities.push_back(
          Commodity{"c" + std::to_string(index), s, t, bound});
      for (Path& path : found) {
        path.commodity = index;
        paths.push_back(std::move(path));
      }
      placed = true;
      break;
    }
    if (!placed) {
      throw ValidationError("could not place commodity " + std::to_string(i) +
                            " on a connected pair after " +
                            std::to_string(kPlacementAttempts) + " attempts");
    }
  }

  auto network = std::make_shared<const Network>(
      std::move(nodes), std::move(edges), std::move(commodities));
  Instance instance;
  instance.name = "gen-" + std::to_string(params.seed);
  instance.seed = params.seed;
  instance.system =
      std::make_shared<const PathSystem>(std::move(network), std::move(paths));
  return instance;
}

}  // namespace concurflow
