#pragma once

#include <memory>
#include <span>

#include "concurflow/bound_groups.hpp"
#include "concurflow/flow.hpp"
#include "concurflow/simplex.hpp"

namespace concurflow::oracle {

// Slack subtracted from lambda* when it is fixed as a constraint in the
// second stage of the EMCFPSC program.
inline constexpr double kStageTwoSlack = 1e-9;

struct MaxFlowResult {
  double value = 0.0;
  Flow flow;
};

struct ConcurrentResult {
  double lambda = 0.0;
  double value = 0.0;  // V_opt: best total value among lambda*-optimal flows
  Flow flow;
};

// All oracles throw OracleError when the simplex fails to certify an
// optimum, and ValidationError on malformed bounds.

// max V(y) over the path system.
MaxFlowResult mmfp(std::shared_ptr<const PathSystem> system);

// max V(y) with V_i(y) <= b_i.
MaxFlowResult mmfpb(std::shared_ptr<const PathSystem> system,
                    std::span<const double> bounds);
MaxFlowResult mmfpb(std::shared_ptr<const PathSystem> system,
                    const BoundGroups& groups);

// max lambda with lambda * b_i <= V_i(y) <= b_i. The flow is the
// stage-one LP vertex; `value` is its V(y), not a saturated optimum.
ConcurrentResult emcfp(std::shared_ptr<const PathSystem> system,
                       std::span<const double> bounds);
double emcfp_lambda(std::shared_ptr<const PathSystem> system,
                    std::span<const double> bounds);

// Two stages: lambda* as above, then max V(y) with
// (lambda* - kStageTwoSlack) * b_i <= V_i(y) <= b_i.
ConcurrentResult emcfpsc(std::shared_ptr<const PathSystem> system,
                         std::span<const double> bounds);

// Second stage alone, with the concurrency level supplied by the caller.
MaxFlowResult saturate(std::shared_ptr<const PathSystem> system,
                       std::span<const double> bounds, double lambda);

}  // namespace concurflow::oracle
