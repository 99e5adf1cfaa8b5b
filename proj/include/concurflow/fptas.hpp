#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>

#include "concurflow/bound_groups.hpp"
#include "concurflow/flow.hpp"

namespace concurflow {

// Parameters of one fractional-packing run over M packing constraints
// (capacitated edges plus active bound edges).
struct FptasConfig {
  double epsilon = 0.0;           // requested factor: V >= OPT / (1 + epsilon)
  double internal_epsilon = 0.0;  // epsilon / 3, clamped to (0, 1/2]
  double log_delta = 0.0;         // ln of the initial length scale
  std::size_t packing_edges = 0;
  std::size_t max_iterations = 0;

  // Throws ValidationError unless 0 < epsilon <= 1/2.
  static FptasConfig make(double epsilon, std::size_t packing_edges);
};

struct FptasOptions {
  // Stop as soon as the primal value is within (1 + epsilon) of the best
  // dual bound seen so far. Off, the run is the plain length-threshold
  // scheme and terminates only once every path has length >= 1.
  bool certified_stop = true;
  // Decision mode, used by the level tests of the main algorithm. With a
  // threshold set (and certified_stop on) the run stops once the primal
  // value reaches it or the dual bound falls below it, and otherwise runs to
  // the plain termination. The (1 + epsilon) factor is then not guaranteed
  // for a run that stops on the threshold, but the verdict "value below the
  // threshold" matches the one an exact solver would give, up to the final
  // gap of the plain scheme.
  std::optional<double> decision_threshold;
};

struct FptasResult {
  Flow flow;
  FptasConfig config;
  std::size_t iterations = 0;
  bool stopped_by_certificate = false;
  // Smallest weak-duality upper bound on OPT observed during the run.
  double dual_bound = 0.0;
};

// Maximum multicommodity flow on an explicit path system.
FptasResult solve_mmfp(std::shared_ptr<const PathSystem> system,
                       double epsilon, FptasOptions options = {});

// Maximum multicommodity flow with V_i(y) <= b_i. A zero bound removes the
// commodity; negative bounds are rejected.
FptasResult solve_mmfpb(std::shared_ptr<const PathSystem> system,
                        std::span<const double> bounds, double epsilon,
                        FptasOptions options = {});

// General form: bounds act on groups of commodities.
FptasResult solve_bounded(std::shared_ptr<const PathSystem> system,
                          const BoundGroups& groups, double epsilon,
                          FptasOptions options = {});

}  // namespace concurflow
