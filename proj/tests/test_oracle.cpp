#include <doctest.h>

#include "obsel/instance_io.hpp"
#include "obsel/lsap.hpp"
#include "obsel/oracle.hpp"
#include "obsel/pipeline.hpp"
#include "obsel/structural.hpp"

using namespace obsel;

namespace {
constexpr auto kNull = std::nullopt;

StructuredSystem two_singletons() { return StructuredSystem(2, {{0, 0}, {1, 1}}); }
}  // namespace

TEST_CASE("enumerate_all: singleton parents, all realizable") {
  CostMatrix c(2, 2, {3.0, 7.0, 4.0, 1.0});
  auto rep = enumerate_all(two_singletons(), c);
  // Both bijections cover both parents: 3+1 and 7+4.
  REQUIRE(rep.observable.size() == 2);
  CHECK(rep.observable[0].cost == 4);
  CHECK(rep.observable[1].cost == 11);
  CHECK(rep.non_observable.empty());
  CHECK(rep.min_observable_cost == 4.0);
  auto s = solve_instance(Instance{two_singletons(), c});
  CHECK(s.assignment->total_cost == *rep.min_observable_cost);
}

TEST_CASE("enumerate_all: unrealizable parent") {
  CostMatrix c(2, 3, {1.0, kNull, 2.0, 4.0, kNull, 3.0});
  StructuredSystem sys(3, {{0, 0}, {1, 1}, {2, 2}, {2, 0}});  // parents {x1}, {x2}
  auto rep = enumerate_all(sys, c);
  CHECK(rep.observable.empty());
  CHECK_FALSE(rep.min_observable_cost.has_value());
  CHECK(rep.non_observable.size() == 2);
  auto s = solve_instance(Instance{sys, c});
  CHECK(s.outcome == Outcome::kInfeasible);
}

TEST_CASE("enumerate_all: invariants of every selection") {
  GeneratorConfig cfg;
  cfg.topology = Topology::kParentChain;
  cfg.n = 8;
  cfg.parents = 3;
  cfg.nonrealizable_prob = 0.3;
  cfg.seed = 4;
  Instance inst = generate(cfg);
  auto rep = enumerate_all(inst.system, inst.costs);
  auto dec = scc_decompose(inst.system);
  auto parents = parent_component_ids(dec);
  auto check = [&](const Selection& s, bool observable) {
    std::vector<char> used(inst.costs.states(), 0), covered(dec.count(), 0);
    double total = 0;
    for (Index i = 0; i < s.picks.size(); ++i) {
      REQUIRE(s.picks[i].has_value());  // m == p: every sensor measures something
      CHECK(inst.costs.realizable(i, *s.picks[i]));
      CHECK_FALSE(used[*s.picks[i]]);
      used[*s.picks[i]] = 1;
      covered[dec.component_of[*s.picks[i]]] = 1;
      total += *inst.costs.at(i, *s.picks[i]);
    }
    CHECK(total == s.cost);
    bool all = true;
    for (auto p : parents) all = all && covered[p];
    CHECK(all == observable);
  };
  for (const auto& s : rep.observable) check(s, true);
  for (const auto& s : rep.non_observable) check(s, false);
  for (std::size_t k = 1; k < rep.observable.size(); ++k)
    CHECK(rep.observable[k - 1].cost <= rep.observable[k].cost);
  if (!rep.observable.empty()) CHECK(rep.min_observable_cost == rep.observable.front().cost);
}

TEST_CASE("enumerate_all: zero non-realizable probability") {
  GeneratorConfig cfg;
  cfg.topology = Topology::kParentChain;
  cfg.n = 6;
  cfg.parents = 2;
  cfg.nonrealizable_prob = 0.0;
  cfg.seed = 8;
  Instance inst = generate(cfg);
  auto rep = enumerate_all(inst.system, inst.costs);
  // 6 * 5 injective selections, split only by parent coverage.
  CHECK(rep.observable.size() + rep.non_observable.size() == 30);
  auto parents = parent_sccs(scc_decompose(inst.system));
  CHECK(rep.observable.size() == 2 * parents[0].size() * parents[1].size());
}

TEST_CASE("enumerate_all: spare sensors may stay idle") {
  StructuredSystem sys(2, {{0, 1}, {1, 0}});  // one parent {x1,x2}
  CostMatrix c(2, 2, {4.0, 5.0, 2.0, 9.0});
  auto rep = enumerate_all(sys, c);
  CHECK(rep.min_observable_cost == 2.0);
  auto s = solve_instance(Instance{sys, c});
  CHECK(s.assignment->total_cost == 2.0);
}

TEST_CASE("enumerate_all: size bounds") {
  std::vector<Edge> loops;
  for (Index v = 0; v < 10; ++v) loops.push_back({v, v});
  StructuredSystem sys(10, loops);
  CostMatrix c(10, 10, std::vector<std::optional<double>>(100, 1.0));
  CHECK_THROWS_AS(enumerate_all(sys, c), InstanceTooLarge);
  OracleLimits tight;
  tight.max_sensors = 10;
  tight.max_selections = 1000;
  CHECK_THROWS_AS(enumerate_all(sys, c, tight), InstanceTooLarge);
}

TEST_CASE("generate: determinism and structure") {
  SUBCASE("same seed, same bytes") {
    for (auto topo : {Topology::kExample1, Topology::kParentChain, Topology::kRandomCyclic}) {
      GeneratorConfig cfg;
      cfg.topology = topo;
      cfg.n = 12;
      cfg.parents = 3;
      cfg.scc_count = 5;
      cfg.seed = 1234;
      if (topo == Topology::kExample1) cfg.n = 0;
      CHECK(dump_system(generate(cfg)) == dump_system(generate(cfg)));
      GeneratorConfig other = cfg;
      other.seed = 1235;
      CHECK(dump_system(generate(cfg)) != dump_system(generate(other)));
    }
  }
  SUBCASE("example1 layout") {
    GeneratorConfig cfg;
    cfg.seed = 7;
    Instance inst = generate(cfg);
    CHECK(inst.system.size() == 15);
    CHECK(inst.costs.sensors() == 4);
    auto d = scc_decompose(inst.system);
    CHECK(d.count() == 6);
    CHECK(parent_sccs(d).size() == 4);
  }
  SUBCASE("five parents over twenty states") {
    GeneratorConfig cfg;
    cfg.topology = Topology::kParentChain;
    cfg.parents = 5;
    cfg.n = 20;
    cfg.nonrealizable_prob = 0.3;
    cfg.seed = 9;
    Instance inst = generate(cfg);
    CHECK(inst.system.size() == 20);
    CHECK(inst.costs.sensors() == 5);
    CHECK(is_structurally_cyclic(inst.system));
    CHECK(parent_sccs(scc_decompose(inst.system)).size() == 5);
  }
  SUBCASE("contradictory config") {
    GeneratorConfig cfg;
    cfg.m = 3;
    CHECK_THROWS_AS(generate(cfg), ValidationError);
    cfg = GeneratorConfig{};
    cfg.nonrealizable_prob = 1.0;
    CHECK_THROWS_AS(generate(cfg), ValidationError);
    cfg = GeneratorConfig{};
    cfg.topology = Topology::kParentChain;
    cfg.n = 3;
    cfg.parents = 4;
    CHECK_THROWS_AS(generate(cfg), ValidationError);
  }
  SUBCASE("row repair leaves every row realizable") {
    // A high hole probability forces redraws.
    GeneratorConfig a;
    a.topology = Topology::kRandomCyclic;
    a.n = 6;
    a.scc_count = 6;
    a.nonrealizable_prob = 0.95;
    a.seed = 5;
    Instance x = generate(a);
    for (Index i = 0; i < x.costs.sensors(); ++i) {
      bool any = false;
      for (Index j = 0; j < x.costs.states(); ++j) any = any || x.costs.realizable(i, j);
      CHECK(any);
    }
  }
}

TEST_CASE("generated systems are structurally cyclic") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GeneratorConfig cfg;
    cfg.topology = seed % 2 ? Topology::kParentChain : Topology::kRandomCyclic;
    cfg.n = 2 + seed % 15;
    cfg.parents = 1 + seed % cfg.n % 4;
    cfg.scc_count = 1 + seed % cfg.n;
    cfg.seed = seed;
    Instance inst = generate(cfg);
    CHECK(is_structurally_cyclic(inst.system));
    CHECK(inst.costs.sensors() == parent_sccs(scc_decompose(inst.system)).size());
  }
}
