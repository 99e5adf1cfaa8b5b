#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "concurflow/bound_groups.hpp"
#include "concurflow/flow.hpp"
#include "concurflow/fptas.hpp"

namespace concurflow {

// Bounded max-flow routine behind the level tests of both searches.
enum class Subroutine { kFptas, kExactOracle };

std::string_view to_string(Subroutine subroutine);
// Accepts "fptas" or "oracle"; throws ValidationError otherwise.
Subroutine parse_subroutine(std::string_view name);

struct SolverOptions {
  Subroutine subroutine = Subroutine::kFptas;
  FptasOptions fptas;
};

// Absolute tolerance of the "value < target / (1 + epsilon)" comparisons.
inline constexpr double kLevelTestTolerance = 1e-12;

// Work counters shared by the two searches.
struct SearchCounters {
  std::size_t subroutine_calls = 0;
  std::size_t fptas_iterations = 0;
};

// epsilon = min(eta / sum_i b_i, 1/2). Rejects eta outside (0, 1) and
// nonpositive bounds.
double compute_epsilon(double eta, std::span<const double> bounds);

struct LevelSearch {
  std::size_t lstar = 1;
  // Flow of the last level that passed; empty when lstar == 1.
  std::optional<Flow> last_passing;
  SearchCounters counters;
};

// Outer search: the first l >= 1 with l * eta > 1, or whose scaled demands
// l * eta * b fail the subroutine level test.
LevelSearch find_lstar(std::shared_ptr<const PathSystem> system,
                       std::span<const double> bounds, double eta,
                       double epsilon, const SolverOptions& options = {});

// Extension of the original network by dedicated sinks t'_i, reached over
// edges (t_i, t'_i) of capacity b'_i = (l* - 1) eta b_i, and a shared
// overflow sink t'_0, reached over edges (t_i, t'_0) of capacity b_i - b'_i.
//
// Commodity layout of `system`: index i < k is the dedicated commodity
// (s_i, t'_i); index k + i is the overflow commodity (s_i, t'_0). Paths come
// in the same order: first every P + (t_i, t'_i), then every P + (t_i, t'_0),
// each block following the original path order.
struct AuxNetwork {
  std::shared_ptr<const PathSystem> original;
  std::shared_ptr<const PathSystem> system;
  std::size_t lstar = 1;
  double eta = 0.0;
  std::vector<double> original_bounds;   // b_i
  std::vector<double> dedicated_bounds;  // b'_i
  NodeIndex overflow_sink = 0;
  std::vector<NodeIndex> dedicated_sinks;
  std::vector<EdgeIndex> dedicated_edges;
  std::vector<EdgeIndex> overflow_edges;
  // Original path of each auxiliary path, and whether it ends in t'_0.
  std::vector<PathIndex> origin;
  std::vector<char> via_overflow;

  std::size_t commodity_count() const { return original_bounds.size(); }
  double dedicated_total() const;
  // k dedicated groups bounded by b'_i plus one aggregated overflow group
  // bounded by `overflow_bound`.
  BoundGroups groups(double overflow_bound) const;
};

AuxNetwork build_auxiliary(std::shared_ptr<const PathSystem> system,
                           std::span<const double> bounds, std::size_t lstar,
                           double eta);

struct SaturationSearch {
  std::size_t hstar = 1;
  Flow aux_flow;  // last passing flow, or the b'_0 = 0 start when hstar == 1
  SearchCounters counters;
};

// Inner search over the overflow level b = h * eta.
SaturationSearch find_hstar(const AuxNetwork& aux, double epsilon,
                            const SolverOptions& options = {});

// y*(P) = y'(P + (t_i, t'_i)) + y'(P + (t_i, t'_0)).
Flow project_flow(const Flow& aux_flow, const AuxNetwork& aux);

// Certified intervals implied by l* and h*.
struct CertifiedBounds {
  double value_lower = 0.0;    // ((l*-1) sum b + (h*-1)) eta - 2 eta
  double value_upper = 0.0;    // ((l*-1) sum b + h*) eta
  double ratio_lower = 0.0;    // (l*-1) eta - 2 eta / min b
  double ratio_upper = 0.0;    // l* eta, also bounds the optimal ratio
  double optimum_upper = 0.0;  // (l* sum b + h*) eta, bounds V_opt
};

CertifiedBounds certified_bounds(std::size_t lstar, std::size_t hstar, double eta,
                             std::span<const double> bounds);

struct SolveReport {
  double eta = 0.0;
  double epsilon = 0.0;
  Subroutine subroutine = Subroutine::kFptas;
  std::size_t lstar = 1;
  std::size_t hstar = 1;
  std::vector<double> bounds{};
  Flow flow;
  double value = 0.0;
  std::vector<double> branch{};
  double ratio = 0.0;
  CertifiedBounds certified{};
  std::size_t outer_iterations = 0;
  std::size_t inner_iterations = 0;
  std::size_t subroutine_calls = 0;
  std::size_t fptas_iterations = 0;
  double wall_seconds = 0.0;
};

// Runs the whole approximation: epsilon, outer search, auxiliary network,
// inner search and projection. Bounds default to the commodity bounds.
SolveReport solve(std::shared_ptr<const PathSystem> system, double eta,
                  const SolverOptions& options = {});
SolveReport solve(std::shared_ptr<const PathSystem> system,
                  std::span<const double> bounds, double eta,
                  const SolverOptions& options = {});

}  // namespace concurflow
