#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "concurflow/simplex.hpp"

using namespace concurflow::lp;

namespace {

// Solves the square system by Gaussian elimination with partial pivoting.
std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    }
    if (std::abs(a[best][col]) < 1e-10) return std::nullopt;
    std::swap(a[best], a[col]);
    std::swap(b[best], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

double row_value(const Constraint& c, const std::vector<double>& x) {
  double s = 0.0;
  for (auto [j, a] : c.terms) s += a * x[j];
  return s;
}

bool satisfies(const LinearProgram& lp, const std::vector<double>& x,
               double tol) {
  for (double v : x) {
    if (v < -tol) return false;
  }
  for (const Constraint& c : lp.constraints) {
    const double v = row_value(c, x);
    if (c.relation != Relation::kGreaterEqual && v > c.rhs + tol) return false;
    if (c.relation != Relation::kLessEqual && v < c.rhs - tol) return false;
  }
  return true;
}

// Best objective over all basic solutions; nullopt when none is feasible.
// Only valid for bounded programs.
std::optional<double> brute_force(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const Constraint& c : lp.constraints) {
    std::vector<double> row(n, 0.0);
    for (auto [j, a] : c.terms) row[j] += a;
    rows.push_back(row);
    rhs.push_back(c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(n, 0.0);
    row[j] = 1.0;
    rows.push_back(row);
    rhs.push_back(0.0);
  }
  std::optional<double> best;
  const std::size_t total = rows.size();
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> choose =
      [&](std::size_t depth, std::size_t from) {
        if (depth == n) {
          std::vector<std::vector<double>> a;
          std::vector<double> b;
          for (std::size_t r : pick) {
            a.push_back(rows[r]);
            b.push_back(rhs[r]);
          }
          auto x = solve_square(a, b);
          if (!x || !satisfies(lp, *x, 1e-9)) return;
          double v = 0.0;
          for (std::size_t j = 0; j < n; ++j) v += lp.objective[j] * (*x)[j];
          if (!best || v > *best) best = v;
          return;
        }
        for (std::size_t r = from; r < total; ++r) {
          pick[depth] = r;
          choose(depth + 1, r + 1);
        }
      };
  choose(0, 0);
  return best;
}

}  // namespace

TEST_CASE("textbook maximum") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
  LinearProgram lp;
  const auto x = lp.add_variable(3.0);
  const auto y = lp.add_variable(5.0);
  lp.add_constraint({{{x, 1.0}}, Relation::kLessEqual, 4.0});
  lp.add_constraint({{{y, 2.0}}, Relation::kLessEqual, 12.0});
  lp.add_constraint({{{x, 3.0}, {y, 2.0}}, Relation::kLessEqual, 18.0});
  const Solution s = solve(lp);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(36.0));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(6.0));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram infeasible;
  const auto x = infeasible.add_variable(1.0);
  infeasible.add_constraint({{{x, 1.0}}, Relation::kLessEqual, 1.0});
  infeasible.add_constraint({{{x, 1.0}}, Relation::kGreaterEqual, 2.0});
  CHECK(solve(infeasible).status == Status::kInfeasible);

  LinearProgram unbounded;
  const auto a = unbounded.add_variable(1.0);
  const auto b = unbounded.add_variable(0.0);
  unbounded.add_constraint({{{a, 1.0}, {b, -1.0}}, Relation::kLessEqual, 1.0});
  CHECK(solve(unbounded).status == Status::kUnbounded);
}

TEST_CASE("equality rows and negative right-hand sides") {
  // max x + y with x + y = 2, -x <= -0.5 (x >= 0.5), y <= 1
  LinearProgram lp;
  const auto x = lp.add_variable(1.0);
  const auto y = lp.add_variable(2.0);
  lp.add_constraint({{{x, 1.0}, {y, 1.0}}, Relation::kEqual, 2.0});
  lp.add_constraint({{{x, -1.0}}, Relation::kLessEqual, -0.5});
  lp.add_constraint({{{y, 1.0}}, Relation::kLessEqual, 1.0});
  const Solution s = solve(lp);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(3.0));
}

TEST_CASE("degenerate program terminates under Bland's rule") {
  // Classic cycling example (Beale) for the largest-coefficient rule.
  LinearProgram lp;
  for (double c : {0.75, -150.0, 0.02, -6.0}) lp.add_variable(c);
  lp.add_constraint({{{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}},
                     Relation::kLessEqual, 0.0});
  lp.add_constraint({{{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}},
                     Relation::kLessEqual, 0.0});
  lp.add_constraint({{{2, 1.0}}, Relation::kLessEqual, 1.0});
  const Solution s = solve(lp);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective == doctest::Approx(0.05));
}

TEST_CASE("random small programs match vertex enumeration") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> vars(1, 4);
  std::uniform_int_distribution<int> rows(1, 4);
  std::uniform_int_distribution<int> coef(-3, 5);
  std::uniform_int_distribution<int> rel(0, 5);
  std::uniform_real_distribution<double> rhs(-2.0, 8.0);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 600; ++trial) {
    LinearProgram lp;
    const int n = vars(rng);
    for (int j = 0; j < n; ++j) lp.add_variable(coef(rng));
    // Keeps every program bounded.
    Constraint box{{}, Relation::kLessEqual, 10.0};
    for (int j = 0; j < n; ++j) box.terms.push_back({std::size_t(j), 1.0});
    lp.add_constraint(box);
    const int m = rows(rng);
    for (int r = 0; r < m; ++r) {
      Constraint c;
      for (int j = 0; j < n; ++j) {
        const int a = coef(rng);
        if (a != 0) c.terms.push_back({std::size_t(j), double(a)});
      }
      const int kind = rel(rng);
      c.relation = kind < 4   ? Relation::kLessEqual
                   : kind < 5 ? Relation::kGreaterEqual
                              : Relation::kEqual;
      c.rhs = std::round(rhs(rng) * 4.0) / 4.0;
      lp.add_constraint(c);
    }
    const std::optional<double> expected = brute_force(lp);
    const Solution s = solve(lp);
    if (expected) {
      ++optimal;
      REQUIRE(s.status == Status::kOptimal);
      CHECK(s.objective == doctest::Approx(*expected).epsilon(1e-7));
      CHECK(satisfies(lp, s.x, 1e-7));
    } else {
      ++infeasible;
      CHECK(s.status == Status::kInfeasible);
    }
  }
  CHECK(optimal > 100);
  CHECK(infeasible > 10);
}
