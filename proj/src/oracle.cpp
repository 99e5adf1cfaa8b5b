#include "concurflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "concurflow/errors.hpp"

namespace concurflow::oracle {

namespace {

// Path-variable LP: one column per usable path, one capacity row per edge
// of E(P), one row per finite bound group.
struct PathLp {
  lp::LinearProgram program;
  std::vector<PathIndex> column_path;
  std::vector<std::vector<std::size_t>> commodity_columns;
};

PathLp build_path_lp(const PathSystem& system, const BoundGroups& groups) {
  const Network& network = system.network();
  groups.validate(network.commodity_count());

  PathLp out;
  out.commodity_columns.resize(network.commodity_count());
  std::map<EdgeIndex, std::vector<std::size_t>> edge_columns;
  std::map<std::size_t, std::vector<std::size_t>> group_columns;

  for (CommodityIndex i = 0; i < network.commodity_count(); ++i) {
    const std::size_t group = groups.group_of[i];
    if (groups.limit[group] <= 0.0) continue;
    for (PathIndex p : system.paths_of(i)) {
      if (!system.is_positive(p)) continue;
      const std::size_t column = out.program.add_variable(1.0);
      out.column_path.push_back(p);
      out.commodity_columns[i].push_back(column);
      for (const Traversal& t : system.path(p).steps) {
        edge_columns[t.edge].push_back(column);
      }
      group_columns[group].push_back(column);
    }
  }
  for (const auto& [edge, columns] : edge_columns) {
    lp::Constraint row;
    for (std::size_t c : columns) row.terms.emplace_back(c, 1.0);
    row.relation = lp::Relation::kLessEqual;
    row.rhs = network.edge(edge).capacity;
    out.program.add_constraint(std::move(row));
  }
  for (const auto& [group, columns] : group_columns) {
    if (!std::isfinite(groups.limit[group])) continue;
    lp::Constraint row;
    for (std::size_t c : columns) row.terms.emplace_back(c, 1.0);
    row.relation = lp::Relation::kLessEqual;
    row.rhs = groups.limit[group];
    out.program.add_constraint(std::move(row));
  }
  return out;
}

lp::Solution run(const lp::LinearProgram& program, const char* what) {
  lp::Solution solution = lp::solve(program);
  if (solution.status != lp::Status::kOptimal) {
    throw OracleError(std::string(what) + ": simplex terminated with status " +
                      std::string(lp::to_string(solution.status)));
  }
  return solution;
}

Flow extract_flow(std::shared_ptr<const PathSystem> system, const PathLp& lp,
                  const std::vector<double>& x) {
  std::vector<double> values(system->path_count(), 0.0);
  for (std::size_t c = 0; c < lp.column_path.size(); ++c) {
    values[lp.column_path[c]] = std::max(0.0, x[c]);
  }
  return Flow(std::move(system), std::move(values));
}

void check_positive(std::span<const double> bounds, std::size_t k) {
  if (bounds.size() != k) {
    throw ValidationError("bound vector length does not match commodities");
  }
  for (double b : bounds) {
    if (!std::isfinite(b) || b <= 0.0) {
      throw ValidationError("bounds must be finite and positive");
    }
  }
}

// Adds lambda * b_i <= V_i rows; with `lambda_column` set, lambda is that
// variable, otherwise the constant `lambda`.
void add_concurrency_rows(PathLp& lp, std::span<const double> bounds,
                          std::optional<std::size_t> lambda_column,
                          double lambda) {
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    lp::Constraint row;
    for (std::size_t c : lp.commodity_columns[i]) row.terms.emplace_back(c, -1.0);
    row.relation = lp::Relation::kLessEqual;
    if (lambda_column) {
      row.terms.emplace_back(*lambda_column, bounds[i]);
      row.rhs = 0.0;
    } else {
      row.rhs = -lambda * bounds[i];
    }
    lp.program.add_constraint(std::move(row));
  }
}

}  // namespace

MaxFlowResult mmfp(std::shared_ptr<const PathSystem> system) {
  if (!system) throw ValidationError("missing path system");
  return mmfpb(system,
               BoundGroups::unbounded(system->network().commodity_count()));
}

MaxFlowResult mmfpb(std::shared_ptr<const PathSystem> system,
                    std::span<const double> bounds) {
  return mmfpb(std::move(system), BoundGroups::per_commodity(bounds));
}

MaxFlowResult mmfpb(std::shared_ptr<const PathSystem> system,
                    const BoundGroups& groups) {
  if (!system) throw ValidationError("missing path system");
  const PathLp lp = build_path_lp(*system, groups);
  const lp::Solution solution = run(lp.program, "max flow oracle");
  Flow flow = extract_flow(std::move(system), lp, solution.x);
  return MaxFlowResult{solution.objective, std::move(flow)};
}

ConcurrentResult emcfp(std::shared_ptr<const PathSystem> system,
                       std::span<const double> bounds) {
  if (!system) throw ValidationError("missing path system");
  check_positive(bounds, system->network().commodity_count());
  PathLp lp = build_path_lp(*system, BoundGroups::per_commodity(bounds));
  std::fill(lp.program.objective.begin(), lp.program.objective.end(), 0.0);
  const std::size_t lambda = lp.program.add_variable(1.0);
  add_concurrency_rows(lp, bounds, lambda, 0.0);
  lp.program.add_constraint({{{lambda, 1.0}}, lp::Relation::kLessEqual, 1.0});
  const lp::Solution solution = run(lp.program, "concurrency oracle");
  Flow flow = extract_flow(std::move(system), lp, solution.x);
  const double value = flow_value(flow);
  return ConcurrentResult{std::clamp(solution.x[lambda], 0.0, 1.0), value,
                          std::move(flow)};
}

double emcfp_lambda(std::shared_ptr<const PathSystem> system,
                    std::span<const double> bounds) {
  return emcfp(std::move(system), bounds).lambda;
}

MaxFlowResult saturate(std::shared_ptr<const PathSystem> system,
                       std::span<const double> bounds, double lambda) {
  if (!system) throw ValidationError("missing path system");
  check_positive(bounds, system->network().commodity_count());
  PathLp lp = build_path_lp(*system, BoundGroups::per_commodity(bounds));
  if (lambda > 0.0) add_concurrency_rows(lp, bounds, std::nullopt, lambda);
  const lp::Solution solution = run(lp.program, "saturation oracle");
  Flow flow = extract_flow(std::move(system), lp, solution.x);
  return MaxFlowResult{solution.objective, std::move(flow)};
}

ConcurrentResult emcfpsc(std::shared_ptr<const PathSystem> system,
                         std::span<const double> bounds) {
  const double lambda = emcfp_lambda(system, bounds);
  MaxFlowResult stage_two =
      saturate(std::move(system), bounds, std::max(0.0, lambda - kStageTwoSlack));
  return ConcurrentResult{lambda, stage_two.value, std::move(stage_two.flow)};
}

}  // namespace concurflow::oracle
