#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "concurflow/compare.hpp"
#include "concurflow/errors.hpp"
#include "concurflow/generator.hpp"
#include "concurflow/instance_io.hpp"

using namespace concurflow;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CONCURFLOW_TEST_DATA;

std::string data(const char* name) { return (kData / name).string(); }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli_run(std::vector<std::string> args) {
  std::vector<const char*> argv{"concurflow-cli"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "concurflow-harness";
  fs::create_directories(dir);
  return dir / name;
}

void expect_parse_error(const std::string& text, const std::string& fragment) {
  try {
    parse_instance(text);
    FAIL("expected a parse error containing " << fragment);
  } catch (const ValidationError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos,
                  e.what());
  }
}

}  // namespace

TEST_CASE("the T1 file parses to the expected model") {
  const Instance inst = read_instance(data("t1.json"));
  CHECK(inst.name == "t1");
  CHECK(inst.network().node_count() == 2);
  CHECK(inst.network().edge_count() == 1);
  CHECK(inst.network().commodity_count() == 2);
  CHECK(inst.system->path_count() == 2);
  CHECK(inst.network().bounds() == std::vector<double>{1.0, 2.0});
}

TEST_CASE("undirected orientation is inferred by chaining") {
  const Instance inst = read_instance(data("mixed.json"));
  CHECK(inst.seed == std::uint64_t{9});
  const Path& p = inst.system->path(1);  // e1, e2 backwards, e4 forwards
  REQUIRE(p.steps.size() == 3);
  CHECK(p.steps[1].forward == false);
  CHECK(p.steps[2].forward == true);
  const Path& q = inst.system->path(3);  // t -> v over e4, then v -> u
  CHECK(q.steps[0].forward == false);
  CHECK(q.steps[1].forward == true);
}

TEST_CASE("parse errors name their location") {
  try {
    read_instance(data("broken_chain.json"));
    FAIL("expected a parse error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("$.paths[1]: broken chain at position 0") !=
          std::string::npos);
  }
  expect_parse_error("{", "$:");
  expect_parse_error(R"({"nodes": ["a", "a"], "edges": [], "commodities": [],
                         "paths": []})",
                     "$.nodes[1]: duplicate node id 'a'");
  expect_parse_error(R"({"nodes": ["a"], "edges": [{"id": "e", "tail": "a",
                         "head": "b", "capacity": 1}], "commodities": [],
                         "paths": []})",
                     "$.edges[0].head: unknown node 'b'");
  expect_parse_error(R"({"nodes": ["a", "b"], "edges": [], "commodities":
                         [{"id": "c", "source": "a", "sink": "b", "bound": 0}],
                         "paths": []})",
                     "$.commodities[0].bound");
  expect_parse_error(R"({"nodes": ["a", "b"], "edges": [{"id": "e", "tail":
                         "a", "head": "b", "capacity": -1}], "commodities": [],
                         "paths": []})",
                     "$.edges[0].capacity");
  expect_parse_error(R"({"nodes": [], "edges": [], "paths": []})",
                     "missing field 'commodities'");
  expect_parse_error(R"({"format": "other/2", "nodes": [], "edges": [],
                         "commodities": [], "paths": []})",
                     "$.format");
}

TEST_CASE("serialization round trip is the identity") {
  std::vector<Instance> instances;
  for (const char* name : {"t1.json", "t2.json", "t3.json", "mixed.json"}) {
    instances.push_back(read_instance(data(name)));
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.nodes = 7;
    p.edges = 12;
    p.commodities = 3;
    instances.push_back(generate_instance(p));
  }
  for (const Instance& inst : instances) {
    const std::string once = serialize_instance(inst);
    const Instance again = parse_instance(once);
    CHECK(serialize_instance(again) == once);
    CHECK(again.name == inst.name);
    CHECK(again.seed == inst.seed);
    const Network& a = inst.network();
    const Network& b = again.network();
    REQUIRE(a.edge_count() == b.edge_count());
    for (EdgeIndex e = 0; e < a.edge_count(); ++e) {
      CHECK(a.edge(e).capacity == b.edge(e).capacity);
      CHECK(a.edge(e).directed == b.edge(e).directed);
    }
    CHECK(a.bounds() == b.bounds());
    REQUIRE(inst.system->path_count() == again.system->path_count());
    for (PathIndex p = 0; p < inst.system->path_count(); ++p) {
      CHECK(inst.system->path(p) == again.system->path(p));
    }
  }
}

TEST_CASE("solution output keeps full double precision") {
  const Instance inst = read_instance(data("mixed.json"));
  const SolveReport report = solve(inst.system, 0.1);
  const auto doc = nlohmann::json::parse(serialize_solution(inst, report));
  CHECK(doc["format"] == "concurflow-solution/1");
  CHECK(doc["value"].get<double>() == report.value);
  CHECK(doc["min_ratio"].get<double>() == report.ratio);
  CHECK(doc["algorithm"]["l_star"].get<std::size_t>() == report.lstar);
  CHECK(doc["algorithm"]["h_star"].get<std::size_t>() == report.hstar);
  CHECK_FALSE(doc["algorithm"].contains("wall_seconds"));
  std::size_t index = 0;
  for (const auto& f : doc["flows"]) {
    CHECK(f["value"].get<double>() == report.flow[index++]);
  }
  const auto timed =
      nlohmann::json::parse(serialize_solution(inst, report, true));
  CHECK(timed["algorithm"].contains("wall_seconds"));
}

TEST_CASE("generator determinism and shape") {
  GeneratorParams p;
  p.seed = 1;
  p.commodities = 3;
  p.max_paths = 5;
  p.nodes = 8;
  p.edges = 14;
  CHECK(serialize_instance(generate_instance(p)) ==
        serialize_instance(generate_instance(p)));
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    p.seed = seed;
    const Instance inst = generate_instance(p);
    CHECK(inst.system->path_count() <= 15);
    CHECK(inst.seed == seed);
    for (CommodityIndex i = 0; i < 3; ++i) {
      CHECK_FALSE(inst.system->paths_of(i).empty());
      CHECK(inst.network().commodity(i).source !=
            inst.network().commodity(i).sink);
      CHECK(inst.network().commodity(i).bound >= 0.5);
      CHECK(inst.network().commodity(i).bound <= 3.0);
    }
    for (const Edge& e : inst.network().edges()) {
      CHECK(e.capacity >= 0.1);
      CHECK(e.capacity <= 2.0);
    }
    CHECK_NOTHROW(parse_instance(serialize_instance(inst)));
  }
  GeneratorParams bad = p;
  bad.edges = 100;
  CHECK_THROWS_AS(generate_instance(bad), ValidationError);
  bad = p;
  bad.bound_min = 0.0;
  CHECK_THROWS_AS(generate_instance(bad), ValidationError);
}

TEST_CASE("cli: solve, oracle and compare") {
  const CliRun solve_run = cli_run({"solve", "--input", data("t2.json"), "--eta",
                                    "0.05"});
  REQUIRE(solve_run.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(solve_run.out);
  CHECK(doc["algorithm"]["l_star"].get<int>() >= 1);
  CHECK(doc["algorithm"]["h_star"].get<int>() >= 1);

  const CliRun oracle_run =
      cli_run({"oracle", "--input", data("t2.json"), "--problem", "emcfpsc"});
  REQUIRE(oracle_run.code == cli::kSuccess);
  const auto exact = nlohmann::json::parse(oracle_run.out);
  CHECK(exact["lambda"].get<double>() == doctest::Approx(0.5));
  CHECK(exact["value"].get<double>() == doctest::Approx(1.5));

  const CliRun mmfp =
      cli_run({"oracle", "--input", data("t3.json"), "--problem", "mmfp"});
  REQUIRE(mmfp.code == cli::kSuccess);
  CHECK_FALSE(nlohmann::json::parse(mmfp.out).contains("lambda"));

  const fs::path csv = scratch("compare.csv");
  const CliRun compare = cli_run({"compare", "--input", data("t1.json"),
                                  "--input", data("t2.json"), "--eta", "0.1",
                                  "--csv", csv.string()});
  CHECK(compare.code == cli::kSuccess);
  const std::string table = read_text_file(csv);
  CHECK(table.starts_with(csv_header()));
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
  CHECK(table.find("FAIL") == std::string::npos);

  CHECK(cli_run({"compare", "--input", data("t1.json"), "--eta", "0.2"}).code ==
        cli::kSuccess);
}

TEST_CASE("cli: exit codes") {
  CHECK(cli_run({}).code == cli::kValidationError);
  CHECK(cli_run({"solve", "--bogus"}).code == cli::kValidationError);
  CHECK(cli_run({"solve", "--input", data("t1.json"), "--eta", "1.5"}).code ==
        cli::kValidationError);
  CHECK(cli_run({"solve", "--input", data("missing.json"), "--eta", "0.1"})
            .code == cli::kValidationError);
  CHECK(cli_run({"solve", "--input", data("broken_chain.json"), "--eta", "0.1"})
            .code == cli::kValidationError);
  CHECK(cli_run({"oracle", "--input", data("t1.json"), "--problem", "xyz"})
            .code == cli::kValidationError);
  CHECK(cli_run({"gen", "--nodes", "3", "--edges", "9"}).code ==
        cli::kValidationError);
  CHECK(cli_run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("cli: gen output and seed override") {
  const CliRun a = cli_run({"gen", "--seed", "7", "--nodes", "6"});
  const CliRun b = cli_run({"gen", "--seed", "7", "--nodes", "6"});
  REQUIRE(a.code == cli::kSuccess);
  CHECK(a.out == b.out);
  CHECK(a.out != cli_run({"gen", "--seed", "8", "--nodes", "6"}).out);

  const fs::path file = scratch("gen.json");
  REQUIRE(cli_run({"gen", "--seed", "7", "--nodes", "6", "--output",
                   file.string()})
              .code == cli::kSuccess);
  CHECK(read_text_file(file) == a.out);

  ::setenv("CONCURFLOW_SEED", "8", 1);
  const CliRun overridden = cli_run({"gen", "--seed", "7", "--nodes", "6"});
  ::setenv("CONCURFLOW_SEED", "x", 1);
  const CliRun invalid = cli_run({"gen", "--seed", "7"});
  ::unsetenv("CONCURFLOW_SEED");
  CHECK(overridden.out == cli_run({"gen", "--seed", "8", "--nodes", "6"}).out);
  CHECK(invalid.code == cli::kValidationError);
}
