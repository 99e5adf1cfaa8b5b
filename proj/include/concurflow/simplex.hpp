#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace concurflow::lp {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::vector<std::pair<std::size_t, double>> terms;  // (variable, coefficient)
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// maximize objective . x  subject to constraints, x >= 0.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;

  std::size_t add_variable(double cost = 0.0);
  void add_constraint(Constraint constraint);
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kPivotLimit, kNumerical };

std::string_view to_string(Status status);

struct Options {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-8;
  double pivot_tolerance = 1e-11;
  std::size_t max_pivots = 200000;
};

struct Solution {
  Status status = Status::kNumerical;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
  // Largest constraint violation of x measured against the original rows.
  double max_violation = 0.0;
};

// Dense two-phase tableau simplex with Bland's rule. kOptimal is reported
// only when every reduced cost is within the optimality tolerance and x
// satisfies the original rows within the feasibility tolerance (scaled by
// the row magnitude).
Solution solve(const LinearProgram& program, const Options& options = {});

}  // namespace concurflow::lp
