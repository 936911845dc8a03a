#pragma once

// Independent reference computations used only by the tests. None of these
// share code with the library routes they check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "obsel/digraph.hpp"

namespace obsel::testing {

// Exhaustive maximum matching: tries every way to pick a distinct row for each
// column (or skip it). Fine for n <= 8.
inline std::size_t brute_force_max_matching(const StructuredSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<char> row_used(n, 0);
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t col, std::size_t size) -> void {
    if (size + (n - col) <= best) return;
    if (col == n) {
      best = std::max(best, size);
      return;
    }
    for (Index row : sys.out_neighbors(col)) {
      if (row_used[row]) continue;
      row_used[row] = 1;
      self(self, col + 1, size + 1);
      row_used[row] = 0;
    }
    self(self, col + 1, size);
  };
  rec(rec, 0, 0);
  return best;
}

// Numeric rank of one random realization: nonzeros uniform in [0.5, 1.5].
inline std::size_t numeric_rank(const StructuredSystem& sys, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(sys.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  for (const Edge& e : sys.edges()) {
    a(static_cast<Eigen::Index>(e.to), static_cast<Eigen::Index>(e.from)) = dist(rng);
  }
  return static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(a).rank());
}

// Reachability closure (Floyd-Warshall style).
inline std::vector<std::vector<char>> reachability(const StructuredSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::size_t v = 0; v < n; ++v) r[v][v] = 1;
  for (const Edge& e : sys.edges()) r[e.from][e.to] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
  return r;
}

// SCCs as sets of mutually reachable nodes, in canonical order.
inline std::vector<std::vector<Index>> brute_force_sccs(const StructuredSystem& sys) {
  auto r = reachability(sys);
  const std::size_t n = sys.size();
  std::vector<char> done(n, 0);
  std::vector<std::vector<Index>> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (done[v]) continue;
    std::vector<Index> comp;
    for (std::size_t w = v; w < n; ++w) {
      if (r[v][w] && r[w][v]) {
        comp.push_back(w);
        done[w] = 1;
      }
    }
    out.push_back(comp);
  }
  return out;
}

// Parent SCCs by definition: no member has an edge to a node outside.
inline std::vector<std::vector<Index>> brute_force_parents(const StructuredSystem& sys) {
  std::vector<std::vector<Index>> out;
  for (const auto& comp : brute_force_sccs(sys)) {
    std::set<Index> members(comp.begin(), comp.end());
    bool parent = true;
    for (const Edge& e : sys.edges()) {
      if (members.count(e.from) && !members.count(e.to)) parent = false;
    }
    if (parent) out.push_back(comp);
  }
  return out;
}

struct BruteAssignment {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<Index> best;                  // lexicographically smallest optimum
  std::vector<std::vector<Index>> optima;   // every optimal permutation (exact compare)
};

// Minimum over all m! permutations of a row-major m x m matrix.
inline BruteAssignment brute_force_lsap(std::size_t m, const std::vector<double>& c) {
  std::vector<Index> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  BruteAssignment out;
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += c[i * m + perm[i]];
    if (total < out.cost) {
      out.cost = total;
      out.optima.clear();
    }
    if (total == out.cost) out.optima.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.best = out.optima.front();  // next_permutation visits in lexicographic order
  return out;
}

inline StructuredSystem random_structure(std::mt19937_64& rng, std::size_t n, double density,
                                         bool force_self_loops = false) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if ((force_self_loops && i == j) || coin(rng)) edges.push_back({j, i});
  return StructuredSystem(n, std::move(edges));
}

}  // namespace obsel::testing
