#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "concurflow/network.hpp"

namespace concurflow {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Upper bounds on aggregated branch values. Commodity i contributes to group
// `group_of[i]`; the sum of V_i over a group may not exceed `limit[group]`.
// The plain MMFP-B case is one group per commodity. A limit of zero shuts the
// group off; kUnbounded leaves it free.
struct BoundGroups {
  std::vector<std::size_t> group_of;
  std::vector<double> limit;

  static BoundGroups per_commodity(std::span<const double> bounds);
  static BoundGroups unbounded(std::size_t commodities);

  // Throws ValidationError on a malformed grouping or a negative/NaN limit.
  void validate(std::size_t commodities) const;
};

}  // namespace concurflow
