#include "concurflow/compare.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "concurflow/errors.hpp"
#include "concurflow/oracle.hpp"

namespace concurflow {

namespace {

std::string number(double x) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return ec == std::errc{} ? std::string(buffer, end) : std::string("nan");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

BoundCheck make_check(std::string_view name, double margin, double tolerance) {
  return BoundCheck{name, true, margin >= -tolerance, margin};
}

double feasibility_margin(const Flow& flow, std::span<const double> bounds) {
  const Network& network = flow.system().network();
  const std::vector<double> loads = edge_loads(flow);
  double margin = std::numeric_limits<double>::infinity();
  for (EdgeIndex e = 0; e < loads.size(); ++e) {
    margin = std::min(margin, network.edge(e).capacity - loads[e]);
  }
  for (CommodityIndex i = 0; i < bounds.size(); ++i) {
    margin = std::min(margin, bounds[i] - branch_value(flow, i));
  }
  return margin;
}

}  // namespace

bool CompareRow::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const BoundCheck& c) { return c.evaluated && c.passed; });
}

CompareRow run_compare(const Instance& instance, double eta,
                       const SolverOptions& options) {
  const auto solve_start = std::chrono::steady_clock::now();
  SolveReport report = solve(instance.system, eta, options);
  const double solve_seconds = seconds_since(solve_start);

  CompareRow row{.report = std::move(report)};
  row.instance = instance.name;
  row.commodities = instance.network().commodity_count();
  row.paths = instance.system->path_count();
  row.solve_seconds = solve_seconds;
  if (row.paths > kOraclePathWarning) {
    row.warning = "more than " + std::to_string(kOraclePathWarning) +
                  " paths; the LP reference may be slow";
  }

  const SolveReport& r = row.report;
  const CertifiedBounds& cert = r.certified;
  row.checks[0] = make_check("feasibility", feasibility_margin(r.flow, r.bounds),
                             kCapacityTolerance);
  row.checks[1] = make_check(
      "value",
      std::min(r.value - cert.value_lower, cert.value_upper - r.value),
      kBoundTolerance);
  row.checks[2] =
      make_check("ratio", r.ratio - cert.ratio_lower, kBoundTolerance);
  row.checks[3] = BoundCheck{"lambda", false, false, 0.0};
  row.checks[4] = BoundCheck{"optimum", false, false, 0.0};

  const auto oracle_start = std::chrono::steady_clock::now();
  try {
    const oracle::ConcurrentResult exact =
        oracle::emcfpsc(instance.system, r.bounds);
    row.lambda_star = exact.lambda;
    row.optimum_value = exact.value;
    row.checks[3] = make_check("lambda", cert.ratio_upper - exact.lambda,
                               kBoundTolerance);
    row.checks[4] = make_check("optimum", cert.optimum_upper - exact.value,
                               kBoundTolerance);
  } catch (const OracleError& e) {
    row.oracle_error = e.what();
  }
  row.oracle_seconds = seconds_since(oracle_start);
  return row;
}

std::vector<CompareRow> run_compare_batch(const std::vector<Instance>& instances,
                                          double eta,
                                          const SolverOptions& options,
                                          std::size_t jobs) {
  std::vector<std::optional<CompareRow>> slots(instances.size());
  std::vector<std::exception_ptr> errors(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        slots[i] = run_compare(instances[i], eta, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(instances.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::vector<CompareRow> rows;
  rows.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    rows.push_back(std::move(*slots[i]));
  }
  return rows;
}

std::string csv_header() {
  return "instance,commodities,paths,eta,epsilon,subroutine,l_star,h_star,"
         "value,min_ratio,value_lower,value_upper,ratio_lower,ratio_upper,"
         "optimum_upper,lambda_star,optimum_value,"
         "feasibility,feasibility_margin,value_check,value_margin,"
         "ratio_check,ratio_margin,lambda_check,lambda_margin,"
         "optimum_check,optimum_margin,subroutine_calls,fptas_iterations,"
         "solve_seconds,oracle_seconds,status";
}

std::string csv_row(const CompareRow& row) {
  const SolveReport& r = row.report;
  std::ostringstream out;
  out << row.instance << ',' << row.commodities << ',' << row.paths << ','
      << number(r.eta) << ',' << number(r.epsilon) << ','
      << to_string(r.subroutine) << ',' << r.lstar << ',' << r.hstar << ','
      << number(r.value) << ',' << number(r.ratio) << ','
      << number(r.certified.value_lower) << ','
      << number(r.certified.value_upper) << ','
      << number(r.certified.ratio_lower) << ','
      << number(r.certified.ratio_upper) << ','
      << number(r.certified.optimum_upper) << ','
      << (row.lambda_star ? number(*row.lambda_star) : "") << ','
      << (row.optimum_value ? number(*row.optimum_value) : "");
  for (const BoundCheck& check : row.checks) {
    out << ',' << (!check.evaluated ? "skipped" : check.passed ? "pass" : "FAIL")
        << ',' << (check.evaluated ? number(check.margin) : "");
  }
  out << ',' << r.subroutine_calls << ',' << r.fptas_iterations << ','
      << number(row.solve_seconds) << ',' << number(row.oracle_seconds) << ','
      << (row.oracle_failed() ? "oracle-failed"
                              : row.all_passed() ? "ok" : "check-failed");
  return out.str();
}

std::string describe(const CompareRow& row) {
  const SolveReport& r = row.report;
  std::ostringstream out;
  out << row.instance << "  eta=" << number(r.eta)
      << "  epsilon=" << number(r.epsilon) << "  l*=" << r.lstar
      << "  h*=" << r.hstar << "  V(y*)=" << number(r.value)
      << "  min ratio=" << number(r.ratio) << '\n';
  if (row.lambda_star) {
    out << "  oracle: lambda*=" << number(*row.lambda_star)
        << "  V_opt=" << number(*row.optimum_value) << '\n';
  } else {
    out << "  oracle failed: " << row.oracle_error << '\n';
  }
  if (!row.warning.empty()) out << "  warning: " << row.warning << '\n';
  for (const BoundCheck& check : row.checks) {
    out << "  " << (check.evaluated ? (check.passed ? "pass" : "FAIL") : "skip")
        << "  " << check.name;
    if (check.evaluated) out << "  margin=" << number(check.margin);
    out << '\n';
  }
  return out.str();
}

}  // namespace concurflow
