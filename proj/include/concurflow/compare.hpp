#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "concurflow/emcfpsc.hpp"
#include "concurflow/instance_io.hpp"

namespace concurflow {

// Slack granted to the certified intervals.
inline constexpr double kBoundTolerance = 1e-7;
// Path count above which the LP reference becomes slow.
inline constexpr std::size_t kOraclePathWarning = 200;

struct BoundCheck {
  std::string_view name;
  bool evaluated = false;
  bool passed = false;
  // Signed distance to the violated side; negative beyond tolerance fails.
  double margin = 0.0;
};

// One solver-versus-oracle comparison.
//   feasibility:  y* within capacities, V_i(y*) <= b_i (tol 1e-9)
//   value:        V_lo <= V(y*) <= V_hi
//   ratio:        min_i V_i(y*)/b_i >= (l*-1) eta - 2 eta / min b
//   lambda:       oracle lambda* <= l* eta
//   optimum:      oracle V_opt <= (l* sum b + h*) eta
struct CompareRow {
  std::string instance{};
  std::size_t commodities = 0;
  std::size_t paths = 0;
  SolveReport report;
  std::optional<double> lambda_star{};
  std::optional<double> optimum_value{};
  std::string oracle_error{};
  std::string warning{};
  std::array<BoundCheck, 5> checks{};
  double solve_seconds = 0.0;
  double oracle_seconds = 0.0;

  bool oracle_failed() const { return !oracle_error.empty(); }
  bool all_passed() const;
};

CompareRow run_compare(const Instance& instance, double eta,
                       const SolverOptions& options = {});

// Runs every instance on up to `jobs` worker threads; rows come back in input
// order.
std::vector<CompareRow> run_compare_batch(const std::vector<Instance>& instances,
                                          double eta,
                                          const SolverOptions& options,
                                          std::size_t jobs);

std::string csv_header();
std::string csv_row(const CompareRow& row);
// Human-readable multi-line summary of one row.
std::string describe(const CompareRow& row);

}  // namespace concurflow
