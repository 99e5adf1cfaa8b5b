#include "concurflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "concurflow/errors.hpp"

namespace concurflow {

Flow::Flow(std::shared_ptr<const PathSystem> system)
    : system_(std::move(system)) {
  if (!system_) throw ValidationError("flow needs a path system");
  values_.assign(system_->path_count(), 0.0);
}

Flow::Flow(std::shared_ptr<const PathSystem> system,
           std::vector<double> values)
    : system_(std::move(system)), values_(std::move(values)) {
  if (!system_) throw ValidationError("flow needs a path system");
  if (values_.size() != system_->path_count()) {
    throw ValidationError("flow has " + std::to_string(values_.size()) +
                          " values for " +
                          std::to_string(system_->path_count()) + " paths");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("flow values must be finite and nonnegative");
    }
  }
}

double edge_load(const Flow& flow, EdgeIndex edge) {
  double load = 0.0;
  const auto paths = flow.system().paths();
  for (PathIndex p = 0; p < paths.size(); ++p) {
    for (const Traversal& t : paths[p].steps) {
      if (t.edge == edge) load += flow[p];
    }
  }
  return load;
}

std::vector<double> edge_loads(const Flow& flow) {
  std::vector<double> loads(flow.system().network().edge_count(), 0.0);
  const auto paths = flow.system().paths();
  for (PathIndex p = 0; p < paths.size(); ++p) {
    for (const Traversal& t : paths[p].steps) loads[t.edge] += flow[p];
  }
  return loads;
}

FeasibilityReport is_feasible(const Flow& flow, double tolerance) {
  FeasibilityReport report;
  const Network& network = flow.system().network();
  const std::vector<double> loads = edge_loads(flow);
  double worst = -std::numeric_limits<double>::infinity();
  for (EdgeIndex e = 0; e < loads.size(); ++e) {
    if (loads[e] <= 0.0) continue;
    const double excess = loads[e] - network.edge(e).capacity;
    if (excess > worst) {
      worst = excess;
      report.worst_edge = e;
    }
  }
  if (report.worst_edge) {
    report.worst_excess = worst;
    report.feasible = worst <= tolerance;
  }
  return report;
}

double flow_value(const Flow& flow) {
  double total = 0.0;
  for (double v : flow.values()) total += v;
  return total;
}

double branch_value(const Flow& flow, CommodityIndex commodity) {
  double total = 0.0;
  for (PathIndex p : flow.system().paths_of(commodity)) total += flow[p];
  return total;
}

std::vector<double> branch_values(const Flow& flow) {
  const std::size_t k = flow.system().network().commodity_count();
  std::vector<double> out(k);
  for (CommodityIndex i = 0; i < k; ++i) out[i] = branch_value(flow, i);
  return out;
}

double min_ratio(const Flow& flow, std::span<const double> bounds) {
  const std::size_t k = flow.system().network().commodity_count();
  if (bounds.size() != k) {
    throw ValidationError("bound vector length does not match commodities");
  }
  if (k == 0) return 0.0;
  double ratio = std::numeric_limits<double>::infinity();
  for (CommodityIndex i = 0; i < k; ++i) {
    if (!(bounds[i] > 0.0)) {
      throw ValidationError("bounds must be positive");
    }
    ratio = std::min(ratio, branch_value(flow, i) / bounds[i]);
  }
  return ratio;
}

double min_ratio(const Flow& flow) {
  const std::vector<double> bounds = flow.system().network().bounds();
  return min_ratio(flow, bounds);
}

}  // namespace concurflow
