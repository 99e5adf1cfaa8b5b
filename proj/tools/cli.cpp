#include "cli.hpp"

#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "concurflow/compare.hpp"
#include "concurflow/emcfpsc.hpp"
#include "concurflow/errors.hpp"
#include "concurflow/generator.hpp"
#include "concurflow/instance_io.hpp"
#include "concurflow/oracle.hpp"

namespace concurflow::cli {

namespace {

// Environment variable that overrides `gen --seed`.
constexpr const char* kSeedVariable = "CONCURFLOW_SEED";

void emit(const std::string& destination, const std::string& text,
          std::ostream& out) {
  if (destination.empty() || destination == "-") {
    out << text;
  } else {
    write_text_file(destination, text);
  }
}

struct SolveArgs {
  std::string input;
  std::string output;
  double eta = 0.1;
  std::string subroutine = "fptas";
  bool timing = false;
  bool plain_fptas = false;
};

struct OracleArgs {
  std::string input;
  std::string output;
  std::string problem = "emcfpsc";
};

struct GenArgs {
  GeneratorParams params;
  std::string output;
};

struct CompareArgs {
  std::vector<std::string> inputs;
  double eta = 0.1;
  std::string csv;
  std::string subroutine = "fptas";
  std::size_t jobs = 1;
};

SolverOptions solver_options(const std::string& subroutine, bool plain_fptas) {
  SolverOptions options;
  options.subroutine = parse_subroutine(subroutine);
  options.fptas.certified_stop = !plain_fptas;
  return options;
}

int run_solve(const SolveArgs& args, std::ostream& out) {
  const Instance instance = read_instance(args.input);
  const SolveReport report = solve(instance.system, args.eta,
                                   solver_options(args.subroutine,
                                                  args.plain_fptas));
  emit(args.output, serialize_solution(instance, report, args.timing), out);
  return kSuccess;
}

int run_oracle(const OracleArgs& args, std::ostream& out) {
  const Instance instance = read_instance(args.input);
  const std::vector<double> bounds = instance.network().bounds();
  std::optional<OracleOutput> result;
  if (args.problem == "mmfp") {
    oracle::MaxFlowResult r = oracle::mmfp(instance.system);
    result.emplace(OracleOutput{args.problem, std::nullopt, r.value, r.flow});
  } else if (args.problem == "mmfpb") {
    oracle::MaxFlowResult r = oracle::mmfpb(instance.system, bounds);
    result.emplace(OracleOutput{args.problem, std::nullopt, r.value, r.flow});
  } else if (args.problem == "emcfp") {
    oracle::ConcurrentResult r = oracle::emcfp(instance.system, bounds);
    result.emplace(OracleOutput{args.problem, r.lambda, r.value, r.flow});
  } else {
    oracle::ConcurrentResult r = oracle::emcfpsc(instance.system, bounds);
    result.emplace(OracleOutput{args.problem, r.lambda, r.value, r.flow});
  }
  emit(args.output, serialize_oracle(instance, *result), out);
  return kSuccess;
}

int run_gen(GenArgs args, std::ostream& out) {
  if (const char* env = std::getenv(kSeedVariable); env && *env) {
    try {
      std::size_t used = 0;
      args.params.seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string(kSeedVariable) +
                            " must be an unsigned integer");
    }
  }
  emit(args.output, serialize_instance(generate_instance(args.params)), out);
  return kSuccess;
}

int run_compare_cmd(const CompareArgs& args, std::ostream& out) {
  std::vector<Instance> instances;
  for (const std::string& input : args.inputs) {
    instances.push_back(read_instance(input));
  }
  const std::vector<CompareRow> rows = run_compare_batch(
      instances, args.eta, solver_options(args.subroutine, false), args.jobs);

  bool check_failed = false;
  bool oracle_failed = false;
  std::string csv = csv_header() + "\n";
  for (const CompareRow& row : rows) {
    out << describe(row);
    csv += csv_row(row) + "\n";
    for (const BoundCheck& check : row.checks) {
      if (check.evaluated && !check.passed) check_failed = true;
    }
    oracle_failed = oracle_failed || row.oracle_failed();
  }
  if (!args.csv.empty()) emit(args.csv, csv, out);
  if (check_failed) return kCheckFailure;
  if (oracle_failed) return kInternalError;
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Approximate and exact solvers for the extended maximum "
               "concurrent flow problem with saturated capacity",
               "concurflow-cli"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "Run the approximation algorithm on an instance");
  solve_cmd->add_option("--input", solve_args.input, "Instance file")
      ->required();
  solve_cmd->add_option("--eta", solve_args.eta, "Error parameter in (0, 1)")
      ->required();
  solve_cmd->add_option("--output", solve_args.output,
                        "Solution file (stdout when omitted)");
  solve_cmd->add_option("--subroutine", solve_args.subroutine,
                        "Bounded max-flow routine")
      ->check(CLI::IsMember({"fptas", "oracle"}));
  solve_cmd->add_flag("--timing", solve_args.timing,
                      "Record wall time in the solution file");
  solve_cmd->add_flag("--plain-fptas", solve_args.plain_fptas,
                      "Disable the duality-gap stop of the FPTAS");

  OracleArgs oracle_args;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Solve an instance exactly by LP");
  oracle_cmd->add_option("--input", oracle_args.input, "Instance file")
      ->required();
  oracle_cmd->add_option("--problem", oracle_args.problem, "Problem variant")
      ->check(CLI::IsMember({"mmfp", "mmfpb", "emcfp", "emcfpsc"}));
  oracle_cmd->add_option("--output", oracle_args.output,
                         "Result file (stdout when omitted)");

  GenArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen", "Generate a random instance (CONCURFLOW_SEED overrides --seed)");
  gen_cmd->add_option("--seed", gen_args.params.seed, "Random seed");
  gen_cmd->add_option("--nodes", gen_args.params.nodes, "Node count");
  gen_cmd->add_option("--edges", gen_args.params.edges, "Edge count");
  gen_cmd->add_option("--commodities", gen_args.params.commodities,
                      "Commodity count");
  gen_cmd->add_option("--max-paths", gen_args.params.max_paths,
                      "Paths kept per commodity");
  gen_cmd->add_option("--bound-min", gen_args.params.bound_min,
                      "Smallest commodity bound");
  gen_cmd->add_option("--bound-max", gen_args.params.bound_max,
                      "Largest commodity bound");
  gen_cmd->add_option("--output", gen_args.output,
                      "Instance file (stdout when omitted)");

  CompareArgs compare_args;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Check the certified bounds against the exact LP reference");
  compare_cmd->add_option("--input", compare_args.inputs,
                          "Instance file (repeatable)")
      ->required();
  compare_cmd->add_option("--eta", compare_args.eta, "Error parameter in (0, 1)")
      ->required();
  compare_cmd->add_option("--csv", compare_args.csv, "Write CSV rows here");
  compare_cmd->add_option("--subroutine", compare_args.subroutine,
                          "Bounded max-flow routine")
      ->check(CLI::IsMember({"fptas", "oracle"}));
  compare_cmd->add_option("--jobs", compare_args.jobs,
                          "Worker threads (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kValidationError;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args, out);
    if (*oracle_cmd) return run_oracle(oracle_args, out);
    if (*gen_cmd) return run_gen(gen_args, out);
    if (*compare_cmd) {
      if (compare_args.jobs == 0) {
        compare_args.jobs =
            std::max(1u, std::thread::hardware_concurrency());
      }
      return run_compare_cmd(compare_args, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const OracleError& e) {
    err << "oracle failure: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace concurflow::cli
