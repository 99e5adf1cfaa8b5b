#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "concurflow/generator.hpp"
#include "concurflow/oracle.hpp"
#include "fixtures.hpp"

using namespace concurflow;

namespace {

constexpr double kGolden = 1e-9;

std::shared_ptr<const PathSystem> with_doubled_capacities(
    const PathSystem& system) {
  const Network& net = system.network();
  std::vector<Edge> edges(net.edges().begin(), net.edges().end());
  for (Edge& e : edges) e.capacity *= 2.0;
  auto doubled = std::make_shared<const Network>(
      std::vector<std::string>(net.nodes().begin(), net.nodes().end()), edges,
      std::vector<Commodity>(net.commodities().begin(),
                             net.commodities().end()));
  return std::make_shared<const PathSystem>(
      doubled, std::vector<Path>(system.paths().begin(), system.paths().end()));
}

std::vector<Instance> corpus(std::size_t count) {
  std::vector<Instance> out;
  for (std::uint64_t seed = 1; out.size() < count; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.nodes = 5;
    p.edges = 8;
    p.commodities = 1 + seed % 3;
    p.max_paths = 4;
    out.push_back(generate_instance(p));
  }
  return out;
}

void check_flow(const Flow& flow, std::span<const double> bounds) {
  CHECK(is_feasible(flow).feasible);
  for (CommodityIndex i = 0; i < bounds.size(); ++i) {
    CHECK(branch_value(flow, i) <= bounds[i] + 1e-9);
  }
}

}  // namespace

TEST_CASE("maximum flow on the golden instances") {
  auto t1 = fixtures::t1();
  auto t2 = fixtures::t2();
  auto t3 = fixtures::t3();
  CHECK(oracle::mmfpb(t1, t1->network().bounds()).value ==
        doctest::Approx(1.0).epsilon(kGolden));
  CHECK(oracle::mmfpb(t2, t2->network().bounds()).value ==
        doctest::Approx(1.5).epsilon(kGolden));
  CHECK(oracle::mmfpb(t3, t3->network().bounds()).value ==
        doctest::Approx(1.0).epsilon(kGolden));
  CHECK(oracle::mmfp(t3).value == doctest::Approx(2.0));
}

TEST_CASE("concurrency level on the golden instances") {
  auto t1 = fixtures::t1();
  auto t2 = fixtures::t2();
  auto t3 = fixtures::t3();
  CHECK(oracle::emcfp_lambda(t1, t1->network().bounds()) ==
        doctest::Approx(1.0 / 3.0).epsilon(kGolden));
  CHECK(oracle::emcfp_lambda(t2, t2->network().bounds()) ==
        doctest::Approx(0.5).epsilon(kGolden));
  CHECK(oracle::emcfp_lambda(t3, t3->network().bounds()) ==
        doctest::Approx(1.0).epsilon(kGolden));
}

TEST_CASE("saturated optimum on the golden instances") {
  struct Case {
    std::shared_ptr<const PathSystem> system;
    double lambda;
    double value;
  };
  for (const Case& c : {Case{fixtures::t1(), 1.0 / 3.0, 1.0},
                        Case{fixtures::t2(), 0.5, 1.5},
                        Case{fixtures::t3(), 1.0, 1.0}}) {
    const auto bounds = c.system->network().bounds();
    const auto r = oracle::emcfpsc(c.system, bounds);
    CHECK(std::abs(r.lambda - c.lambda) <= kGolden);
    CHECK(std::abs(r.value - c.value) <= kGolden);
    check_flow(r.flow, bounds);
  }
  // The saturated value on T2 exceeds lambda * sum b = 1.
  const auto t2 = oracle::emcfpsc(fixtures::t2(), std::vector<double>{1, 1});
  CHECK(branch_value(t2.flow, 0) == doctest::Approx(0.5));
  CHECK(branch_value(t2.flow, 1) == doctest::Approx(1.0));
}

TEST_CASE("an empty commodity forces lambda to zero") {
  auto sys = fixtures::make_system(
      {"s", "t", "u"}, {{"e", 0, 1, 1.0, true}},
      {{"c1", 0, 1, 1.0}, {"c2", 0, 2, 1.0}}, {{0, {0}}});
  const auto r = oracle::emcfpsc(sys, sys->network().bounds());
  CHECK(r.lambda == doctest::Approx(0.0));
  CHECK(r.value == doctest::Approx(1.0));
}

TEST_CASE("oracle properties on a generated corpus") {
  std::mt19937_64 rng(99);
  for (const Instance& inst : corpus(30)) {
    CAPTURE(inst.name);
    const auto bounds = inst.network().bounds();
    const auto exact = oracle::emcfpsc(inst.system, bounds);
    check_flow(exact.flow, bounds);
    CHECK(exact.lambda >= -1e-12);
    CHECK(exact.lambda <= 1.0 + 1e-12);
    double total_bound = 0.0;
    for (double b : bounds) total_bound += b;
    CHECK(exact.value >= exact.lambda * total_bound - 1e-9);
    CHECK(min_ratio(exact.flow, bounds) >= exact.lambda - 1e-8);

    // Stage two at lambda = 0 is the bounded maximum flow.
    const double opt_b = oracle::mmfpb(inst.system, bounds).value;
    CHECK(oracle::saturate(inst.system, bounds, 0.0).value ==
          doctest::Approx(opt_b).epsilon(1e-9));

    // Doubling every capacity never hurts.
    auto doubled = with_doubled_capacities(*inst.system);
    const auto wide = oracle::emcfpsc(doubled, bounds);
    CHECK(wide.lambda >= exact.lambda - 1e-9);
    CHECK(wide.value >= exact.value - 1e-9);

    // Random feasible flows with concurrency >= lambda* never beat V_opt.
    const std::size_t n = inst.system->path_count();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int sample = 0; sample < 200; ++sample) {
      std::vector<double> y(n);
      for (double& v : y) v = unit(rng);
      // Mix with the optimum so some samples keep the concurrency level.
      const double mix = unit(rng);
      for (std::size_t p = 0; p < n; ++p) {
        y[p] = (1.0 - mix) * exact.flow[p] + mix * y[p];
      }
      Flow flow(inst.system, y);
      // Scale down to feasibility.
      double scale = 1.0;
      const auto loads = edge_loads(flow);
      for (EdgeIndex e = 0; e < loads.size(); ++e) {
        if (loads[e] > 0.0) {
          scale = std::min(scale, inst.network().edge(e).capacity / loads[e]);
        }
      }
      for (CommodityIndex i = 0; i < bounds.size(); ++i) {
        const double v = branch_value(flow, i);
        if (v > 0.0) scale = std::min(scale, bounds[i] / v);
      }
      for (double& v : y) v *= scale;
      Flow scaled(inst.system, y);
      if (min_ratio(scaled, bounds) >= exact.lambda - 1e-9) {
        CHECK(flow_value(scaled) <= exact.value + 1e-9);
      }
    }
  }
}
