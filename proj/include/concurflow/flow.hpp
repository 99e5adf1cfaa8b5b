#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "concurflow/network.hpp"

namespace concurflow {

// Path-based multicommodity flow: one nonnegative value per path of a
// PathSystem, indexed by global path index.
class Flow {
 public:
  explicit Flow(std::shared_ptr<const PathSystem> system);
  Flow(std::shared_ptr<const PathSystem> system, std::vector<double> values);

  const PathSystem& system() const { return *system_; }
  const std::shared_ptr<const PathSystem>& system_ptr() const {
    return system_;
  }

  std::span<const double> values() const { return values_; }
  double operator[](PathIndex p) const { return values_.at(p); }

 private:
  std::shared_ptr<const PathSystem> system_;
  std::vector<double> values_;
};

// Gross load: sum of y(P) over every path through the edge, whichever
// direction an undirected edge is crossed.
double edge_load(const Flow& flow, EdgeIndex edge);
std::vector<double> edge_loads(const Flow& flow);

struct FeasibilityReport {
  bool feasible = true;
  // Edge with the largest load - capacity excess, if any edge has load.
  std::optional<EdgeIndex> worst_edge;
  double worst_excess = 0.0;
};

FeasibilityReport is_feasible(const Flow& flow,
                              double tolerance = kCapacityTolerance);

// V(y), summed in path index order.
double flow_value(const Flow& flow);
// V_i(y), summed in path index order.
double branch_value(const Flow& flow, CommodityIndex commodity);
std::vector<double> branch_values(const Flow& flow);

// min_i V_i(y) / b_i. Throws ValidationError on a nonpositive bound or a
// bound vector of the wrong length.
double min_ratio(const Flow& flow, std::span<const double> bounds);
double min_ratio(const Flow& flow);

}  // namespace concurflow
