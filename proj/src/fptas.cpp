#include "concurflow/fptas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "concurflow/errors.hpp"

namespace concurflow {

FptasConfig FptasConfig::make(double epsilon, std::size_t packing_edges) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw ValidationError("epsilon must lie in (0, 1/2], got " +
                          std::to_string(epsilon));
  }
  FptasConfig config;
  config.epsilon = epsilon;
  config.internal_epsilon = std::min(epsilon / 3.0, 0.5);
  config.packing_edges = packing_edges;

  const double eps = config.internal_epsilon;
  const double m = static_cast<double>(std::max<std::size_t>(packing_edges, 1));
  // delta = (1 + eps) * ((1 + eps) * M)^(-1/eps), kept as a logarithm since
  // it underflows a double for small eps.
  config.log_delta = std::log1p(eps) - std::log((1.0 + eps) * m) / eps;
  config.max_iterations =
      10 * static_cast<std::size_t>(std::ceil(m * std::log(m + 1.0) /
                                              (eps * eps))) +
      100;
  return config;
}

namespace {

// Explicit packing problem: each active path is a column over packing rows,
// where a row is either a real edge or a bound group.
struct PackingProblem {
  std::vector<double> capacity;                 // per row
  std::vector<PathIndex> columns;               // global path index
  std::vector<std::vector<std::size_t>> rows;   // per column
};

PackingProblem build_packing(const PathSystem& system,
                             const BoundGroups& groups) {
  const Network& network = system.network();
  PackingProblem problem;
  std::map<EdgeIndex, std::size_t> edge_row;
  std::map<std::size_t, std::size_t> group_row;

  // Column order fixes tie-breaking: commodity index, then path position.
  for (CommodityIndex i = 0; i < network.commodity_count(); ++i) {
    const std::size_t group = groups.group_of[i];
    const double limit = groups.limit[group];
    if (limit <= 0.0) continue;
    for (PathIndex p : system.paths_of(i)) {
      if (!system.is_positive(p)) continue;
      std::vector<std::size_t> rows;
      for (const Traversal& t : system.path(p).steps) {
        auto [it, fresh] = edge_row.emplace(t.edge, problem.capacity.size());
        if (fresh) problem.capacity.push_back(network.edge(t.edge).capacity);
        rows.push_back(it->second);
      }
      if (std::isfinite(limit)) {
        auto [it, fresh] = group_row.emplace(group, problem.capacity.size());
        if (fresh) problem.capacity.push_back(limit);
        rows.push_back(it->second);
      }
      problem.columns.push_back(p);
      problem.rows.push_back(std::move(rows));
    }
  }
  return problem;
}

// Lengths are stored relative to exp(log_scale) so the run survives delta
// values far below the smallest double.
class LengthFunction {
 public:
  LengthFunction(std::span<const double> capacity, double log_delta)
      : length_(capacity.size()), log_scale_(log_delta) {
    for (std::size_t r = 0; r < capacity.size(); ++r) {
      length_[r] = 1.0 / capacity[r];
    }
  }

  double stored(std::size_t r) const { return length_[r]; }
  double log_scale() const { return log_scale_; }

  void grow(std::size_t r, double factor) {
    length_[r] *= factor;
    if (length_[r] > kRescaleAbove) rescale();
  }

 private:
  static constexpr double kRescaleAbove = 1e200;

  void rescale() {
    const double top = *std::max_element(length_.begin(), length_.end());
    for (double& l : length_) l /= top;
    log_scale_ += std::log(top);
  }

  std::vector<double> length_;
  double log_scale_;
};

}  // namespace

FptasResult solve_bounded(std::shared_ptr<const PathSystem> system,
                          const BoundGroups& groups, double epsilon,
                          FptasOptions options) {
  if (!system) throw ValidationError("missing path system");
  groups.validate(system->network().commodity_count());
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw ValidationError("epsilon must lie in (0, 1/2], got " +
                          std::to_string(epsilon));
  }

  const PackingProblem problem = build_packing(*system, groups);
  FptasConfig config = FptasConfig::make(epsilon, problem.capacity.size());
  if (problem.columns.empty()) {
    return FptasResult{Flow(system), config, 0, false, 0.0};
  }

  const double eps = config.internal_epsilon;
  const std::size_t rows = problem.capacity.size();
  LengthFunction lengths(problem.capacity, config.log_delta);
  std::vector<double> raw(problem.columns.size(), 0.0);
  std::vector<double> load(rows, 0.0);
  double raw_total = 0.0;
  double congestion = 0.0;
  double best_dual = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool certified = false;

  while (true) {
    std::size_t best = 0;
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < problem.columns.size(); ++c) {
      double len = 0.0;
      for (std::size_t r : problem.rows[c]) len += lengths.stored(r);
      if (len < alpha) {
        alpha = len;
        best = c;
      }
    }
    if (std::log(alpha) + lengths.log_scale() >= 0.0) break;

    if (options.certified_stop) {
      // Weak duality: any positive length function normalised to make every
      // path length >= 1 is a feasible dual, so D(l) / alpha(l) >= OPT.
      double volume = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        volume += problem.capacity[r] * lengths.stored(r);
      }
      best_dual = std::min(best_dual, volume / alpha);
      const double primal = congestion > 0.0 ? raw_total / congestion : 0.0;
      if (options.decision_threshold) {
        const double threshold = *options.decision_threshold;
        if (primal >= threshold || best_dual < threshold) {
          certified = true;
          break;
        }
      } else if (primal * (1.0 + epsilon) >= best_dual * (1.0 + 1e-12)) {
        certified = true;
        break;
      }
    }

    if (iterations == config.max_iterations) {
      throw InternalError("fractional packing exceeded " +
                          std::to_string(config.max_iterations) +
                          " iterations");
    }
    ++iterations;

    double push = std::numeric_limits<double>::infinity();
    for (std::size_t r : problem.rows[best]) {
      push = std::min(push, problem.capacity[r]);
    }
    raw[best] += push;
    raw_total += push;
    for (std::size_t r : problem.rows[best]) {
      load[r] += push;
      congestion = std::max(congestion, load[r] / problem.capacity[r]);
      lengths.grow(r, 1.0 + eps * push / problem.capacity[r]);
    }
  }

  // Dividing by the congestion alone is always feasible; the plain scheme
  // keeps its textbook scale factor.
  double divisor = congestion;
  if (!options.certified_stop) {
    const double log_step = std::log1p(eps);
    const double scale = (log_step - config.log_delta) / log_step;
    // Clip by a single factor when rounding leaves an edge overloaded.
    divisor = std::max(scale, congestion);
  }
  std::vector<double> values(system->path_count(), 0.0);
  if (divisor > 0.0) {  // zero only when nothing was pushed
    for (std::size_t c = 0; c < problem.columns.size(); ++c) {
      values[problem.columns[c]] = raw[c] / divisor;
    }
  }
  if (!options.certified_stop) best_dual = kUnbounded;
  return FptasResult{Flow(system, std::move(values)), config, iterations,
                     certified, best_dual};
}

FptasResult solve_mmfp(std::shared_ptr<const PathSystem> system,
                       double epsilon, FptasOptions options) {
  if (!system) throw ValidationError("missing path system");
  const BoundGroups groups =
      BoundGroups::unbounded(system->network().commodity_count());
  return solve_bounded(std::move(system), groups, epsilon, options);
}

FptasResult solve_mmfpb(std::shared_ptr<const PathSystem> system,
                        std::span<const double> bounds, double epsilon,
                        FptasOptions options) {
  return solve_bounded(std::move(system), BoundGroups::per_commodity(bounds),
                       epsilon, options);
}

}  // namespace concurflow
