#include "concurflow/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "concurflow/errors.hpp"

namespace concurflow::lp {

std::size_t LinearProgram::add_variable(double cost) {
  objective.push_back(cost);
  return variables++;
}

void LinearProgram::add_constraint(Constraint constraint) {
  constraints.push_back(std::move(constraint));
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kPivotLimit: return "pivot-limit";
    case Status::kNumerical: return "numerical";
  }
  return "unknown";
}

namespace {

enum class ColumnKind { kStructural, kSlack, kArtificial };

class Tableau {
 public:
  Tableau(const LinearProgram& program, const Options& options)
      : options_(options), rows_(program.constraints.size()) {
    const std::size_t n = program.variables;
    kinds_.assign(n, ColumnKind::kStructural);

    // Row normalisation: rhs >= 0, flipping the relation when negated.
    std::vector<Relation> relation(rows_);
    std::vector<double> sign(rows_, 1.0);
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Constraint& c = program.constraints[i];
      relation[i] = c.relation;
      if (c.rhs < 0.0) {
        sign[i] = -1.0;
        if (c.relation == Relation::kLessEqual) {
          relation[i] = Relation::kGreaterEqual;
        } else if (c.relation == Relation::kGreaterEqual) {
          relation[i] = Relation::kLessEqual;
        }
      }
      if (relation[i] != Relation::kEqual) ++slacks;
      if (relation[i] != Relation::kLessEqual) ++artificials;
    }

    columns_ = n + slacks + artificials;
    table_.assign(rows_, std::vector<double>(columns_ + 1, 0.0));
    basis_.assign(rows_, 0);
    kinds_.resize(columns_);

    std::size_t next_slack = n;
    std::size_t next_artificial = n + slacks;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Constraint& c = program.constraints[i];
      for (const auto& [var, coef] : c.terms) {
        if (var >= n) throw ValidationError("LP term names unknown variable");
        table_[i][var] += sign[i] * coef;
      }
      table_[i][columns_] = sign[i] * c.rhs;
      if (relation[i] == Relation::kLessEqual) {
        kinds_[next_slack] = ColumnKind::kSlack;
        table_[i][next_slack] = 1.0;
        basis_[i] = next_slack++;
      } else {
        if (relation[i] == Relation::kGreaterEqual) {
          kinds_[next_slack] = ColumnKind::kSlack;
          table_[i][next_slack++] = -1.0;
        }
        kinds_[next_artificial] = ColumnKind::kArtificial;
        table_[i][next_artificial] = 1.0;
        basis_[i] = next_artificial++;
      }
    }
  }

  // Returns the terminal status; kOptimal means reduced costs are certified.
  Status optimise(const std::vector<double>& cost, bool allow_artificial) {
    // Objective row holds z_j - c_j; the last entry is the objective value.
    objective_.assign(columns_ + 1, 0.0);
    for (std::size_t j = 0; j < columns_; ++j) objective_[j] = -cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= columns_; ++j) {
        objective_[j] += cb * table_[i][j];
      }
    }

    while (true) {
      // Bland: lowest-index improving column.
      std::size_t entering = columns_;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (!allow_artificial && kinds_[j] == ColumnKind::kArtificial) continue;
        if (objective_[j] < -options_.optimality_tolerance) {
          entering = j;
          break;
        }
      }
      if (entering == columns_) return Status::kOptimal;

      // Ratio test; ties resolved by the lowest basic variable index.
      std::size_t leaving = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = table_[i][entering];
        if (a <= options_.pivot_tolerance) continue;
        const double ratio = std::max(0.0, table_[i][columns_]) / a;
        if (leaving == rows_) {
          best_ratio = ratio;
          leaving = i;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, std::abs(best_ratio));
        if (ratio < best_ratio - slack ||
            (ratio <= best_ratio + slack && basis_[i] < basis_[leaving])) {
          best_ratio = std::min(ratio, best_ratio);
          leaving = i;
        }
      }
      if (leaving == rows_) return Status::kUnbounded;
      if (pivots_ == options_.max_pivots) return Status::kPivotLimit;
      pivot(leaving, entering);
    }
  }

  // Pivot basic artificials at zero level out of the basis where possible.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (kinds_[basis_[i]] != ColumnKind::kArtificial) continue;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (kinds_[j] == ColumnKind::kArtificial) continue;
        if (std::abs(table_[i][j]) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double objective_value() const { return objective_[columns_]; }
  std::size_t columns() const { return columns_; }
  std::size_t pivots() const { return pivots_; }
  ColumnKind kind(std::size_t j) const { return kinds_[j]; }

  std::vector<double> primal(std::size_t structural) const {
    std::vector<double> x(structural, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural) {
        x[basis_[i]] = std::max(0.0, table_[i][columns_]);
      }
    }
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t column) {
    ++pivots_;
    std::vector<double>& pivot_row = table_[row];
    const double p = pivot_row[column];
    for (double& v : pivot_row) v /= p;
    pivot_row[column] = 1.0;
    auto eliminate = [&](std::vector<double>& target) {
      const double f = target[column];
      if (f == 0.0) return;
      for (std::size_t j = 0; j <= columns_; ++j) {
        target[j] -= f * pivot_row[j];
      }
      target[column] = 0.0;
    };
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != row) eliminate(table_[i]);
    }
    if (!objective_.empty()) eliminate(objective_);
    basis_[row] = column;
  }

  Options options_;
  std::size_t rows_;
  std::size_t columns_ = 0;
  std::vector<std::vector<double>> table_;
  std::vector<double> objective_;
  std::vector<std::size_t> basis_;
  std::vector<ColumnKind> kinds_;
  std::size_t pivots_ = 0;
};

double row_violation(const Constraint& c, const std::vector<double>& x) {
  double lhs = 0.0;
  double magnitude = std::abs(c.rhs);
  for (const auto& [var, coef] : c.terms) {
    lhs += coef * x[var];
    magnitude = std::max(magnitude, std::abs(coef * x[var]));
  }
  double violation = 0.0;
  switch (c.relation) {
    case Relation::kLessEqual: violation = lhs - c.rhs; break;
    case Relation::kGreaterEqual: violation = c.rhs - lhs; break;
    case Relation::kEqual: violation = std::abs(lhs - c.rhs); break;
  }
  return std::max(0.0, violation) / std::max(1.0, magnitude);
}

}  // namespace

Solution solve(const LinearProgram& program, const Options& options) {
  if (program.objective.size() != program.variables) {
    throw ValidationError("LP objective length does not match variables");
  }
  Tableau tableau(program, options);
  Solution solution;

  std::vector<double> phase_one(tableau.columns(), 0.0);
  bool has_artificial = false;
  for (std::size_t j = 0; j < tableau.columns(); ++j) {
    if (tableau.kind(j) == ColumnKind::kArtificial) {
      phase_one[j] = -1.0;
      has_artificial = true;
    }
  }
  if (has_artificial) {
    const Status status = tableau.optimise(phase_one, true);
    if (status != Status::kOptimal) {
      solution.status = status == Status::kUnbounded ? Status::kNumerical
                                                     : status;
      solution.pivots = tableau.pivots();
      return solution;
    }
    if (tableau.objective_value() < -options.feasibility_tolerance) {
      solution.status = Status::kInfeasible;
      solution.pivots = tableau.pivots();
      return solution;
    }
    tableau.expel_artificials();
  }

  std::vector<double> cost(tableau.columns(), 0.0);
  std::copy(program.objective.begin(), program.objective.end(), cost.begin());
  solution.status = tableau.optimise(cost, false);
  solution.pivots = tableau.pivots();
  solution.x = tableau.primal(program.variables);
  solution.objective = 0.0;
  for (std::size_t j = 0; j < program.variables; ++j) {
    solution.objective += program.objective[j] * solution.x[j];
  }
  for (const Constraint& c : program.constraints) {
    solution.max_violation =
        std::max(solution.max_violation, row_violation(c, solution.x));
  }
  if (solution.status == Status::kOptimal &&
      solution.max_violation > options.feasibility_tolerance) {
    solution.status = Status::kNumerical;
  }
  return solution;
}

}  // namespace concurflow::lp
