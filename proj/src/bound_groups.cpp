#include "concurflow/bound_groups.hpp"

#include <cmath>
#include <string>

#include "concurflow/errors.hpp"

namespace concurflow {

BoundGroups BoundGroups::per_commodity(std::span<const double> bounds) {
  BoundGroups groups;
  groups.limit.assign(bounds.begin(), bounds.end());
  groups.group_of.resize(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) groups.group_of[i] = i;
  return groups;
}

BoundGroups BoundGroups::unbounded(std::size_t commodities) {
  BoundGroups groups;
  groups.group_of.resize(commodities);
  groups.limit.assign(commodities, kUnbounded);
  for (std::size_t i = 0; i < commodities; ++i) groups.group_of[i] = i;
  return groups;
}

void BoundGroups::validate(std::size_t commodities) const {
  if (group_of.size() != commodities) {
    throw ValidationError("bound grouping covers " +
                          std::to_string(group_of.size()) + " commodities, " +
                          "expected " + std::to_string(commodities));
  }
  for (std::size_t g : group_of) {
    if (g >= limit.size()) {
      throw ValidationError("commodity mapped to unknown bound group");
    }
  }
  for (double b : limit) {
    if (std::isnan(b) || b < 0.0) {
      throw ValidationError("bounds must be nonnegative");
    }
  }
}

}  // namespace concurflow
