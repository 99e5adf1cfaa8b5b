#pragma once

#include <cstddef>
#include <cstdint>

#include "concurflow/instance_io.hpp"

namespace concurflow {

struct GeneratorParams {
  std::uint64_t seed = 1;
  std::size_t nodes = 6;
  std::size_t edges = 9;
  std::size_t commodities = 2;
  std::size_t max_paths = 5;  // per commodity
  double bound_min = 0.5;
  double bound_max = 3.0;
};

// Random hybrid network over distinct node pairs with capacities in
// [0.1, 2.0], k source-sink pairs that each have at least one path, and the
// lexicographically first `max_paths` simple paths per commodity. The same
// parameters always produce the same instance. Throws ValidationError on bad
// parameters or when a connected pair cannot be placed within the retry
// budget.
Instance generate_instance(const GeneratorParams& params);

}  // namespace concurflow
