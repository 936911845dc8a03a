#include <doctest.h>

#include <random>

#include "obsel/lsap.hpp"
#include "obsel/structural.hpp"
#include "oracles.hpp"

using namespace obsel;
using obsel::testing::brute_force_lsap;

namespace {

constexpr auto kNull = std::nullopt;

void check_certified(const ReducedCostMatrix& r, const AssignmentSolution& s) {
  auto cert = check_certificate(r, s);
  CHECK(cert.bijective);
  CHECK(cert.max_dual_violation <= kDefaultTolerance);
  CHECK(cert.max_slack <= kDefaultTolerance);
  CHECK(cert.objective_gap <= kDefaultTolerance);
  CHECK(cert.ok);
}

}  // namespace

TEST_CASE("solve_lsap examples") {
  SUBCASE("1x1") {
    auto s = solve_lsap(1, {5});
    CHECK(s.permutation == std::vector<Index>{0});
    CHECK(s.total_cost == 5);
  }
  SUBCASE("diagonal optimum") {
    CHECK(brute_force_lsap(2, {1, 2, 3, 1}).cost == 2);
    auto s = solve_lsap(2, {1, 2, 3, 1});
    CHECK(s.permutation == std::vector<Index>{0, 1});
    CHECK(s.total_cost == 2);
  }
  SUBCASE("anti-diagonal optimum") {
    CHECK(brute_force_lsap(2, {4, 1, 1, 4}).cost == 2);
    auto s = solve_lsap(2, {4, 1, 1, 4});
    CHECK(s.permutation == std::vector<Index>{1, 0});
    CHECK(s.total_cost == 2);
  }
  SUBCASE("all equal -> identity") {
    auto s = solve_lsap(5, std::vector<double>(25, 3.0));
    CHECK(s.permutation == std::vector<Index>{0, 1, 2, 3, 4});
    CHECK(s.total_cost == 15);
  }
}

TEST_CASE("oracle equivalence and certificates on random matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t m = 1 + trial % 7;
    std::vector<double> c(m * m);
    bool integer = trial % 2 == 0;
    // Small integer range forces plenty of ties.
    std::uniform_int_distribution<int> small(0, trial % 3 == 0 ? 2 : 20);
    std::uniform_real_distribution<double> real(0.0, 10.0);
    for (double& x : c) x = integer ? small(rng) : real(rng);

    auto expect = brute_force_lsap(m, c);
    auto r = ReducedCostMatrix::from_values(m, c);
    auto s = solve_lsap(r);
    if (integer) {
      CHECK(s.total_cost == expect.cost);
      CHECK(s.permutation == expect.best);
    } else {
      CHECK(s.total_cost == doctest::Approx(expect.cost).epsilon(1e-12));
    }
    check_certified(r, s);
  }
}

TEST_CASE("property: row/column shifts keep the optimal set") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> small(0, 6);
  std::uniform_int_distribution<int> shift(-5, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + trial % 6;
    std::vector<double> c(m * m);
    for (double& x : c) x = small(rng) + 5;
    auto base = brute_force_lsap(m, c);
    auto sol = solve_lsap(m, c);

    std::vector<double> shifted = c;
    const Index line = trial % m;
    const double k = shift(rng);
    const bool row = trial % 2 == 0;
    for (Index t = 0; t < m; ++t) (row ? shifted[line * m + t] : shifted[t * m + line]) += k;
    auto moved = brute_force_lsap(m, shifted);
    auto sol2 = solve_lsap(m, shifted);

    CHECK(moved.optima == base.optima);
    CHECK(sol2.total_cost == sol.total_cost + k);
    CHECK(sol2.permutation == sol.permutation);
  }
}

TEST_CASE("feasibility_verdict") {
  SUBCASE("pseudo entries only off the diagonal") {
    auto r = reduce_costs(CostMatrix(2, 2, {3.0, kNull, kNull, 1.0}), {{0}, {1}});
    auto s = solve_lsap(r);
    CHECK(s.permutation == std::vector<Index>{0, 1});
    CHECK(s.total_cost == 4);
    CHECK(s.feasible);
    CHECK(feasibility_verdict(s, r).feasible);
    check_certified(r, s);
  }
  SUBCASE("column entirely pseudo") {
    auto r = reduce_costs(CostMatrix(2, 3, {1.0, kNull, 2.0, 4.0, kNull, 3.0}), {{0}, {1}});
    auto s = solve_lsap(r);
    CHECK_FALSE(s.feasible);
    CHECK(s.total_cost >= r.pseudo_cost());
    auto v = feasibility_verdict(s, r);
    CHECK_FALSE(v.feasible);
    CHECK(v.uncoverable_parents == std::vector<Index>{1});
    check_certified(r, s);
  }
  SUBCASE("Hall failure without an all-pseudo column") {
    // Parents 0 and 1 are both realizable only by sensor 0.
    auto r = reduce_costs(
        CostMatrix(3, 3, {1.0, 1.0, 1.0, kNull, kNull, 1.0, kNull, kNull, 1.0}),
        {{0}, {1}, {2}});
    auto s = solve_lsap(r);
    auto v = feasibility_verdict(s, r);
    CHECK_FALSE(v.feasible);
    CHECK(v.uncoverable_parents.empty());
    CHECK(v.hall_violator == std::vector<Index>{0, 1});
  }
  SUBCASE("all realizable is always feasible") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(0, 10);
    for (int t = 0; t < 50; ++t) {
      std::vector<std::optional<double>> v(16);
      for (auto& x : v) x = d(rng);
      auto r = reduce_costs(CostMatrix(4, 4, v), {{0}, {1}, {2}, {3}});
      CHECK(feasibility_verdict(solve_lsap(r), r).feasible);
    }
  }
  SUBCASE("size mismatch") {
    auto r = reduce_costs(CostMatrix(1, 1, {1.0}), {{0}});
    AssignmentSolution bogus;
    bogus.permutation = {0, 1};
    CHECK_THROWS_AS(feasibility_verdict(bogus, r), ValidationError);
  }
}

TEST_CASE("assemble_measurement") {
  SUBCASE("singleton parents") {
    auto r = reduce_costs(CostMatrix(2, 2, {3.0, 7.0, 4.0, 1.0}), {{0}, {1}});
    auto meas = assemble_measurement({0, 1}, r);
    CHECK(meas.pick(0) == Index{0});
    CHECK(meas.pick(1) == Index{1});
  }
  SUBCASE("argmin provenance") {
    auto r = reduce_costs(CostMatrix(2, 3, {5.0, 2.0, 9.0, 8.0, 6.0, 1.0}), {{0, 1}, {2}});
    auto s = solve_lsap(r);
    CHECK(s.permutation == std::vector<Index>{0, 1});
    REQUIRE(s.measurement);
    CHECK(s.measurement->pick(0) == Index{1});
    CHECK(s.measurement->pick(1) == Index{2});
  }
  SUBCASE("dummy columns leave sensors idle") {
    auto r = reduce_costs(CostMatrix(2, 2, {1.0, 5.0, 0.5, 2.0}), {{0, 1}});
    auto s = solve_lsap(r);
    REQUIRE(s.measurement);
    CHECK(s.total_cost == 0.5);
    CHECK_FALSE(s.measurement->pick(0).has_value());
    CHECK(s.measurement->pick(1) == Index{0});
  }
  SUBCASE("infeasible permutation is rejected") {
    auto r = reduce_costs(CostMatrix(2, 2, {3.0, kNull, kNull, 1.0}), {{0}, {1}});
    CHECK_THROWS_AS(assemble_measurement({1, 0}, r), Error);
  }
}
