#include <doctest.h>

#include <algorithm>
#include <random>

#include "obsel/cost_model.hpp"

using namespace obsel;

namespace {

CostMatrix costs(std::size_t m, std::size_t n, std::vector<std::optional<double>> v) {
  return CostMatrix(m, n, std::move(v));
}

constexpr auto kNull = std::nullopt;

}  // namespace

TEST_CASE("reduce_costs: singleton parents copy the cost matrix") {
  auto r = reduce_costs(costs(2, 2, {3.0, 7.0, 4.0, 1.0}), {{0}, {1}});
  CHECK(r.values() == std::vector<double>{3, 7, 4, 1});
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) CHECK_FALSE(r.is_pseudo(i, j));
}

TEST_CASE("reduce_costs: minimum over each parent") {
  auto r = reduce_costs(costs(2, 3, {5.0, 2.0, 9.0, 8.0, 6.0, 1.0}), {{0, 1}, {2}});
  CHECK(r.values() == std::vector<double>{2, 9, 6, 1});
  CHECK(r.argmin_state(0, 0) == Index{1});
  CHECK(r.argmin_state(1, 0) == Index{1});
  CHECK(r.argmin_state(1, 1) == Index{2});
}

TEST_CASE("reduce_costs: pseudo entries") {
  auto r = reduce_costs(costs(2, 2, {3.0, kNull, kNull, 1.0}), {{0}, {1}});
  // max(c) * m * n = 3 * 2 * 2
  CHECK(r.pseudo_cost() == 12.0);
  CHECK(r.values() == std::vector<double>{3, 12, 12, 1});
  CHECK(r.is_pseudo(0, 1));
  CHECK(r.is_pseudo(1, 0));
  CHECK_FALSE(r.is_pseudo(0, 0));
  CHECK_FALSE(r.argmin_state(0, 1).has_value());
}

TEST_CASE("pseudo-cost edge cases") {
  CHECK(pseudo_cost_for(costs(1, 2, {0.0, 0.0})) == 1.0);
  // All equal and all realizable: product equals the sum, so it is bumped.
  CHECK(pseudo_cost_for(costs(1, 1, {5.0})) == 6.0);
  CHECK(pseudo_cost_for(costs(2, 2, {1.0, 2.0, kNull, 4.0})) == 16.0);
}

TEST_CASE("reduce_costs: errors and padding") {
  CHECK_THROWS_AS(reduce_costs(costs(1, 2, {1.0, 1.0}), {{0}, {1}}), InsufficientSensors);
  CHECK_THROWS_AS(reduce_costs(costs(1, 2, {1.0, 1.0}), {}), ValidationError);
  CHECK_THROWS_AS(reduce_costs(costs(1, 2, {1.0, 1.0}), {{4}}), ValidationError);

  auto r = reduce_costs(costs(3, 2, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}), {{0, 1}});
  CHECK(r.parents() == 1);
  CHECK(r.columns() == 3);
  CHECK(r.is_dummy(1));
  CHECK(r.is_dummy(2));
  CHECK(r.value(0, 2) == 0.0);
  CHECK_FALSE(r.is_pseudo(0, 2));
}

TEST_CASE("property: provenance, dominance, monotonicity, tie determinism") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> cost(0, 9);
  std::bernoulli_distribution hole(0.4);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 7, m = 1 + trial % 4;
    std::vector<std::optional<double>> v(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = hole(rng) ? kNull : std::optional(double(cost(rng)));
      v[i * n + trial % n] = double(cost(rng));  // keep every row realizable
    }
    CostMatrix c(m, n, v);

    // Random partition of a random subset of states into m parents.
    std::vector<Index> states(n);
    for (Index s = 0; s < n; ++s) states[s] = s;
    std::shuffle(states.begin(), states.end(), rng);
    std::vector<std::vector<Index>> parents(m);
    for (std::size_t k = 0; k < n; ++k) parents[k % m].push_back(states[k]);
    if (std::any_of(parents.begin(), parents.end(), [](auto& p) { return p.empty(); })) continue;

    auto r = reduce_costs(c, parents);
    CHECK(r.pseudo_cost() > c.sum_realizable());
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < m; ++j) {
        if (r.is_pseudo(i, j)) {
          for (Index s : parents[j]) CHECK_FALSE(c.realizable(i, s));
          continue;
        }
        Index at = *r.argmin_state(i, j);
        CHECK(*c.at(i, at) == r.value(i, j));
        for (Index s : parents[j]) {
          if (!c.realizable(i, s)) continue;
          CHECK(r.value(i, j) <= *c.at(i, s));
          if (*c.at(i, s) == r.value(i, j)) CHECK(at <= s);
        }
      }
    }

    // Reordering members changes nothing.
    auto shuffled = parents;
    for (auto& p : shuffled) std::shuffle(p.begin(), p.end(), rng);
    auto r2 = reduce_costs(c, shuffled);
    CHECK(r2.values() == r.values());
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) CHECK(r2.argmin_state(i, j) == r.argmin_state(i, j));

    // Moving a state from parent 0 into parent 1 never raises parent 1's entries.
    if (m >= 2 && parents[0].size() >= 2) {
      auto grown = parents;
      grown[1].push_back(grown[0].back());
      grown[0].pop_back();
      auto r3 = reduce_costs(c, grown);
      for (Index i = 0; i < m; ++i) {
        if (!r.is_pseudo(i, 1)) CHECK(r3.value(i, 1) <= r.value(i, 1));
      }
    }
  }
}
