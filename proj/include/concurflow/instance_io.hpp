#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "concurflow/emcfpsc.hpp"
#include "concurflow/flow.hpp"
#include "concurflow/network.hpp"

namespace concurflow {

inline constexpr std::string_view kInstanceFormat = "concurflow-instance/1";
inline constexpr std::string_view kSolutionFormat = "concurflow-solution/1";
inline constexpr std::string_view kOracleFormat = "concurflow-oracle/1";

// A network plus its explicit path system, with optional provenance.
struct Instance {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::shared_ptr<const PathSystem> system;

  const Network& network() const { return system->network(); }
};

// Parses the JSON instance format (see docs/file-formats.md). Errors are
// reported as ValidationError with a JSON-pointer-like location, e.g.
// "$.paths[3]: broken chain at position 1".
Instance parse_instance(std::string_view text);

// Pretty-printed JSON; doubles use the shortest round-trip decimal form, so
// parse_instance(serialize_instance(x)) reproduces x exactly.
std::string serialize_instance(const Instance& instance);

std::string serialize_solution(const Instance& instance,
                               const SolveReport& report,
                               bool include_timing = false);

// Output of the `oracle` subcommand. `lambda` is absent for the pure
// max-flow problems.
struct OracleOutput {
  std::string problem;
  std::optional<double> lambda;
  double value = 0.0;
  Flow flow;
};
std::string serialize_oracle(const Instance& instance,
                             const OracleOutput& output);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
Instance read_instance(const std::filesystem::path& path);

}  // namespace concurflow
