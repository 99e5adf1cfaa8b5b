#include "concurflow/emcfpsc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "concurflow/errors.hpp"
#include "concurflow/oracle.hpp"

namespace concurflow {

std::string_view to_string(Subroutine subroutine) {
  return subroutine == Subroutine::kFptas ? "fptas" : "oracle";
}

Subroutine parse_subroutine(std::string_view name) {
  if (name == "fptas") return Subroutine::kFptas;
  if (name == "oracle") return Subroutine::kExactOracle;
  throw ValidationError("unknown subroutine '" + std::string(name) + "'");
}

namespace {

void check_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw ValidationError("eta must lie in (0, 1), got " +
                          std::to_string(eta));
  }
}

void check_bounds(std::span<const double> bounds, std::size_t commodities) {
  if (bounds.size() != commodities) {
    throw ValidationError("bound vector length does not match commodities");
  }
  if (bounds.empty()) throw ValidationError("instance has no commodities");
  for (double b : bounds) {
    if (!std::isfinite(b) || b <= 0.0) {
      throw ValidationError("bounds must be finite and positive");
    }
  }
}

double sum(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

// Smallest value that passes the "V < target / (1 + epsilon)" test.
double pass_threshold(double target, double epsilon) {
  return target / (1.0 + epsilon) - kLevelTestTolerance;
}

bool falls_short(double value, double target, double epsilon) {
  return value < pass_threshold(target, epsilon);
}

// `target` is the level being tested; the initial inner solve has none.
Flow run_subroutine(const std::shared_ptr<const PathSystem>& system,
                    const BoundGroups& groups, double epsilon,
                    std::optional<double> target, const SolverOptions& options,
                    SearchCounters& counters) {
  ++counters.subroutine_calls;
  if (options.subroutine == Subroutine::kExactOracle) {
    return oracle::mmfpb(system, groups).flow;
  }
  FptasOptions fptas = options.fptas;
  if (fptas.certified_stop && target) {
    fptas.decision_threshold = pass_threshold(*target, epsilon);
  }
  FptasResult result = solve_bounded(system, groups, epsilon, fptas);
  counters.fptas_iterations += result.iterations;
  return std::move(result.flow);
}

}  // namespace

double compute_epsilon(double eta, std::span<const double> bounds) {
  check_eta(eta);
  if (bounds.empty()) throw ValidationError("instance has no commodities");
  for (double b : bounds) {
    if (!std::isfinite(b) || b <= 0.0) {
      throw ValidationError("bounds must be finite and positive");
    }
  }
  return std::min(eta / sum(bounds), 0.5);
}

LevelSearch find_lstar(std::shared_ptr<const PathSystem> system,
                       std::span<const double> bounds, double eta,
                       double epsilon, const SolverOptions& options) {
  if (!system) throw ValidationError("missing path system");
  check_eta(eta);
  check_bounds(bounds, system->network().commodity_count());

  LevelSearch search;
  const double total = sum(bounds);
  std::vector<double> scaled(bounds.size());
  for (std::size_t l = 1;; ++l) {
    const double level = static_cast<double>(l) * eta;
    if (level > 1.0) {
      search.lstar = l;
      break;
    }
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      scaled[i] = level * bounds[i];
    }
    Flow flow = run_subroutine(system, BoundGroups::per_commodity(scaled),
                               epsilon, level * total, options,
                               search.counters);
    if (falls_short(flow_value(flow), level * total, epsilon)) {
      search.lstar = l;
      break;
    }
    search.last_passing = std::move(flow);
  }
  return search;
}

double AuxNetwork::dedicated_total() const { return sum(dedicated_bounds); }

BoundGroups AuxNetwork::groups(double overflow_bound) const {
  const std::size_t k = commodity_count();
  BoundGroups out;
  out.group_of.resize(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    out.group_of[i] = i;
    out.group_of[k + i] = k;
  }
  out.limit = dedicated_bounds;
  out.limit.push_back(overflow_bound);
  return out;
}

AuxNetwork build_auxiliary(std::shared_ptr<const PathSystem> system,
                           std::span<const double> bounds, std::size_t lstar,
                           double eta) {
  if (!system) throw ValidationError("missing path system");
  if (lstar < 1) throw ValidationError("l* must be at least 1");
  check_eta(eta);
  const Network& base = system->network();
  check_bounds(bounds, base.commodity_count());
  const std::size_t k = base.commodity_count();

  AuxNetwork aux;
  aux.original = system;
  aux.lstar = lstar;
  aux.eta = eta;
  aux.original_bounds.assign(bounds.begin(), bounds.end());
  aux.dedicated_bounds.resize(k);
  const double level = static_cast<double>(lstar - 1) * eta;
  for (std::size_t i = 0; i < k; ++i) {
    aux.dedicated_bounds[i] = level * bounds[i];
  }

  std::vector<std::string> nodes(base.nodes().begin(), base.nodes().end());
  std::vector<Edge> edges(base.edges().begin(), base.edges().end());
  auto fresh_name = [&base](std::string name) {
    while (base.find_node(name) || base.find_edge(name)) name += '\'';
    return name;
  };

  aux.overflow_sink = nodes.size();
  nodes.push_back(fresh_name("t'0"));
  for (std::size_t i = 0; i < k; ++i) {
    aux.dedicated_sinks.push_back(nodes.size());
    nodes.push_back(fresh_name("t'" + std::to_string(i + 1)));
  }

  std::vector<Commodity> commodities;
  commodities.reserve(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    const Commodity& c = base.commodity(i);
    aux.dedicated_edges.push_back(edges.size());
    edges.push_back(Edge{fresh_name("(" + c.id + ")->t'" + std::to_string(i + 1)),
                         c.sink, aux.dedicated_sinks[i],
                         aux.dedicated_bounds[i], true});
    // Bounds here are placeholders; the effective ones come from groups().
    commodities.push_back(
        Commodity{"dedicated:" + c.id, c.source, aux.dedicated_sinks[i], c.bound});
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Commodity& c = base.commodity(i);
    aux.overflow_edges.push_back(edges.size());
    edges.push_back(Edge{fresh_name("(" + c.id + ")->t'0"), c.sink,
                         aux.overflow_sink,
                         std::max(0.0, bounds[i] - aux.dedicated_bounds[i]),
                         true});
    commodities.push_back(
        Commodity{"overflow:" + c.id, c.source, aux.overflow_sink, c.bound});
  }

  auto network = std::make_shared<const Network>(
      std::move(nodes), std::move(edges), std::move(commodities));

  std::vector<Path> paths;
  paths.reserve(2 * system->path_count());
  for (int overflow = 0; overflow < 2; ++overflow) {
    for (PathIndex p = 0; p < system->path_count(); ++p) {
      const Path& path = system->path(p);
      const std::size_t i = path.commodity;
      Path extended{overflow ? k + i : i, path.steps};
      extended.steps.push_back(
          Traversal{overflow ? aux.overflow_edges[i] : aux.dedicated_edges[i],
                    true});
      paths.push_back(std::move(extended));
      aux.origin.push_back(p);
      aux.via_overflow.push_back(static_cast<char>(overflow));
    }
  }
  aux.system = std::make_shared<const PathSystem>(
      std::move(network), std::move(paths),
      PathRules{.allow_zero_capacity = true, .allow_source_revisit = true});
  return aux;
}

SaturationSearch find_hstar(const AuxNetwork& aux, double epsilon,
                            const SolverOptions& options) {
  if (!aux.system) throw ValidationError("auxiliary network not built");
  const double total = sum(aux.original_bounds);
  const double dedicated = aux.dedicated_total();

  SearchCounters counters;
  Flow current =
      run_subroutine(aux.system, aux.groups(0.0), epsilon, std::nullopt,
                     options, counters);
  std::size_t hstar = 1;
  for (std::size_t h = 1;; ++h) {
    const double overflow = static_cast<double>(h) * aux.eta;
    if (overflow > total) {
      hstar = h;
      break;
    }
    Flow flow = run_subroutine(aux.system, aux.groups(overflow), epsilon,
                               dedicated + overflow, options, counters);
    if (falls_short(flow_value(flow), dedicated + overflow, epsilon)) {
      hstar = h;
      break;
    }
    current = std::move(flow);
  }
  return SaturationSearch{hstar, std::move(current), counters};
}

Flow project_flow(const Flow& aux_flow, const AuxNetwork& aux) {
  if (aux_flow.system_ptr() != aux.system) {
    throw ValidationError("flow is not defined on this auxiliary network");
  }
  std::vector<double> values(aux.original->path_count(), 0.0);
  for (PathIndex p = 0; p < aux_flow.system().path_count(); ++p) {
    values[aux.origin[p]] += aux_flow[p];
  }
  return Flow(aux.original, std::move(values));
}

CertifiedBounds certified_bounds(std::size_t lstar, std::size_t hstar, double eta,
                             std::span<const double> bounds) {
  const double total = sum(bounds);
  const double smallest = *std::min_element(bounds.begin(), bounds.end());
  const double l = static_cast<double>(lstar);
  const double h = static_cast<double>(hstar);
  CertifiedBounds out;
  out.value_lower = ((l - 1.0) * total + (h - 1.0)) * eta - 2.0 * eta;
  out.value_upper = ((l - 1.0) * total + h) * eta;
  out.ratio_lower = (l - 1.0) * eta - 2.0 * eta / smallest;
  out.ratio_upper = l * eta;
  out.optimum_upper = (l * total + h) * eta;
  return out;
}

SolveReport solve(std::shared_ptr<const PathSystem> system, double eta,
                  const SolverOptions& options) {
  if (!system) throw ValidationError("missing path system");
  const std::vector<double> bounds = system->network().bounds();
  return solve(std::move(system), bounds, eta, options);
}

SolveReport solve(std::shared_ptr<const PathSystem> system,
                  std::span<const double> bounds, double eta,
                  const SolverOptions& options) {
  if (!system) throw ValidationError("missing path system");
  check_eta(eta);
  check_bounds(bounds, system->network().commodity_count());
  const auto start = std::chrono::steady_clock::now();

  const double epsilon = compute_epsilon(eta, bounds);
  LevelSearch outer = find_lstar(system, bounds, eta, epsilon, options);
  const AuxNetwork aux = build_auxiliary(system, bounds, outer.lstar, eta);
  SaturationSearch inner = find_hstar(aux, epsilon, options);
  Flow flow = project_flow(inner.aux_flow, aux);

  SolveReport report{.flow = flow};
  report.eta = eta;
  report.epsilon = epsilon;
  report.subroutine = options.subroutine;
  report.lstar = outer.lstar;
  report.hstar = inner.hstar;
  report.bounds.assign(bounds.begin(), bounds.end());
  report.value = flow_value(flow);
  report.branch = branch_values(flow);
  report.ratio = min_ratio(flow, bounds);
  report.certified = certified_bounds(outer.lstar, inner.hstar, eta, bounds);
  report.outer_iterations = outer.lstar;
  report.inner_iterations = inner.hstar;
  report.subroutine_calls =
      outer.counters.subroutine_calls + inner.counters.subroutine_calls;
  report.fptas_iterations =
      outer.counters.fptas_iterations + inner.counters.fptas_iterations;
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

}  // namespace concurflow
