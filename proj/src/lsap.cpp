#include "obsel/lsap.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "obsel/matching.hpp"

namespace obsel {

namespace {

constexpr Index kNone = std::numeric_limits<Index>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

class HungarianSolver {
 public:
  HungarianSolver(std::size_t m, const std::vector<double>& values)
      : m_(m), c_(values), u_(m, 0.0), v_(m, 0.0), row_of_col_(m + 1, kNone) {}

  void run() {
    reduce();
    greedy_zeros();
    for (Index i = 0; i < m_; ++i) {
      if (!row_matched_[i]) augment_from(i);
    }
    perm_.assign(m_, kNone);
    for (Index j = 0; j < m_; ++j) perm_[row_of_col_[j]] = j;
    lexicographic_min();
  }

  std::vector<Index> take_permutation() { return std::move(perm_); }
  std::vector<double> take_row_duals() { return std::move(u_); }
  std::vector<double> take_col_duals() { return std::move(v_); }

 private:
  double cost(Index i, Index j) const { return c_[i * m_ + j]; }
  double reduced(Index i, Index j) const { return cost(i, j) - u_[i] - v_[j]; }

  // Row then column reduction: feasible starting potentials.
  void reduce() {
    for (Index i = 0; i < m_; ++i) {
      double lo = kInf;
      for (Index j = 0; j < m_; ++j) lo = std::min(lo, cost(i, j));
      u_[i] = lo;
    }
    for (Index j = 0; j < m_; ++j) {
      double lo = kInf;
      for (Index i = 0; i < m_; ++i) lo = std::min(lo, cost(i, j) - u_[i]);
      v_[j] = lo;
    }
  }

  // Initial independent set of zeros, picked greedily in index order.
  void greedy_zeros() {
    row_matched_.assign(m_, 0);
    for (Index i = 0; i < m_; ++i) {
      for (Index j = 0; j < m_; ++j) {
        if (row_of_col_[j] == kNone && reduced(i, j) == 0.0) {
          row_of_col_[j] = i;
          row_matched_[i] = 1;
          break;
        }
      }
    }
  }

  // Shortest augmenting path from free row `root` (Dijkstra over reduced
  // costs). Column m_ is a virtual column holding the root.
  void augment_from(Index root) {
    std::vector<double> minv(m_ + 1, kInf);
    std::vector<Index> way(m_ + 1, kNone);
    std::vector<char> used(m_ + 1, 0);
    row_of_col_[m_] = root;
    Index j0 = m_;
    do {
      used[j0] = 1;
      Index i0 = row_of_col_[j0];
      double delta = kInf;
      Index j1 = kNone;
      for (Index j = 0; j < m_; ++j) {
        if (used[j]) continue;
        double cur = reduced(i0, j);
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= m_; ++j) {
        if (used[j]) {
          u_[row_of_col_[j]] += delta;
          if (j < m_) v_[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col_[j0] != kNone);
    do {
      Index j1 = way[j0];
      row_of_col_[j0] = row_of_col_[j1];
      j0 = j1;
    } while (j0 != m_);
    row_of_col_[m_] = kNone;
    row_matched_[root] = 1;
  }

  // Every optimal permutation uses only tight entries (zero reduced cost
  // under optimal duals). Walk the rows in order and move each one to the
  // smallest tight column still reachable by an alternating cycle through
  // the unfixed rows.
  void lexicographic_min() {
    double scale = 1.0;
    for (double x : c_) scale = std::max(scale, std::abs(x));
    const double eps = 1e-12 * scale;
    auto tight = [&](Index i, Index j) { return reduced(i, j) <= eps; };

    std::vector<std::vector<Index>> tight_rows(m_);
    for (Index i = 0; i < m_; ++i) {
      for (Index j = 0; j < m_; ++j) {
        if (tight(i, j)) tight_rows[j].push_back(i);
      }
    }
    std::vector<Index> inv(m_);
    for (Index i = 0; i < m_; ++i) inv[perm_[i]] = i;

    std::vector<char> good(m_, 0);
    std::vector<Index> next(m_, kNone);
    std::vector<Index> touched;
    for (Index i = 0; i < m_; ++i) {
      const Index c = perm_[i];
      bool candidate = false;
      for (Index j = 0; j < c && !candidate; ++j) {
        candidate = inv[j] > i && tight(i, j);
      }
      if (!candidate) continue;

      touched.clear();
      std::deque<Index> queue{c};
      good[c] = 1;
      touched.push_back(c);
      while (!queue.empty()) {
        Index y = queue.front();
        queue.pop_front();
        for (Index r : tight_rows[y]) {
          if (r <= i) continue;
          Index x = perm_[r];
          if (good[x]) continue;
          good[x] = 1;
          next[x] = y;
          touched.push_back(x);
          queue.push_back(x);
        }
      }

      Index pick = kNone;
      for (Index j = 0; j < c; ++j) {
        if (good[j] && inv[j] > i && tight(i, j)) {
          pick = j;
          break;
        }
      }
      if (pick != kNone) {
        std::vector<std::pair<Index, Index>> moves{{i, pick}};
        for (Index x = pick; x != c; x = next[x]) moves.emplace_back(inv[x], next[x]);
        for (auto [r, col] : moves) {
          perm_[r] = col;
          inv[col] = r;
        }
      }
      for (Index x : touched) good[x] = 0;
    }
  }

  std::size_t m_;
  const std::vector<double>& c_;
  std::vector<double> u_;
  std::vector<double> v_;
  std::vector<Index> row_of_col_;
  std::vector<char> row_matched_;
  std::vector<Index> perm_;
};

}  // namespace

AssignmentSolution solve_lsap(const ReducedCostMatrix& reduced) {
  const std::size_t m = reduced.sensors();
  HungarianSolver solver(m, reduced.values());
  solver.run();

  AssignmentSolution sol;
  sol.permutation = solver.take_permutation();
  sol.row_duals = solver.take_row_duals();
  sol.col_duals = solver.take_col_duals();
  sol.total_cost = 0.0;
  sol.feasible = true;
  for (Index i = 0; i < m; ++i) {
    sol.total_cost += reduced.value(i, sol.permutation[i]);
    if (reduced.is_pseudo(i, sol.permutation[i])) sol.feasible = false;
  }
  if (sol.feasible && reduced.states() > 0) {
    sol.measurement = assemble_measurement(sol.permutation, reduced);
  }
  return sol;
}

AssignmentSolution solve_lsap(std::size_t m, const std::vector<double>& values) {
  return solve_lsap(ReducedCostMatrix::from_values(m, values));
}

FeasibilityVerdict feasibility_verdict(const AssignmentSolution& sol,
                                       const ReducedCostMatrix& reduced) {
  const std::size_t m = reduced.sensors();
  if (sol.permutation.size() != m) {
    throw ValidationError("solution has " + std::to_string(sol.permutation.size()) +
                          " rows, reduced matrix has " + std::to_string(m));
  }
  FeasibilityVerdict out;
  for (Index i = 0; i < m; ++i) {
    if (sol.permutation[i] >= m) throw ValidationError("solution column out of range");
    if (reduced.is_pseudo(i, sol.permutation[i])) out.feasible = false;
  }
  if (out.feasible) {
    out.reason = "feasible";
    return out;
  }

  for (Index j = 0; j < reduced.parents(); ++j) {
    bool all_pseudo = true;
    for (Index i = 0; i < m && all_pseudo; ++i) all_pseudo = reduced.is_pseudo(i, j);
    if (all_pseudo) out.uncoverable_parents.push_back(j);
  }
  if (!out.uncoverable_parents.empty()) {
    out.reason = "parent SCC not realizable by any sensor";
    return out;
  }

  BipartiteMatcher matcher(m, reduced.parents());
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < reduced.parents(); ++j) {
      if (!reduced.is_pseudo(i, j)) matcher.add_edge(i, j);
    }
  }
  matcher.solve();
  out.hall_violator = matcher.hall_violator_right();
  out.reason = "parent SCCs share too few realizable sensors";
  return out;
}

MeasurementStructure assemble_measurement(const std::vector<Index>& permutation,
                                          const ReducedCostMatrix& reduced) {
  const std::size_t m = reduced.sensors();
  if (permutation.size() != m) throw ValidationError("permutation size mismatch");
  std::vector<std::optional<Index>> picks(m);
  for (Index i = 0; i < m; ++i) {
    Index col = permutation[i];
    if (col >= m) throw ValidationError("permutation column out of range");
    if (reduced.is_pseudo(i, col)) {
      throw Error("cannot assemble a measurement from an infeasible assignment (sensor " +
                  std::to_string(i + 1) + ")");
    }
    if (!reduced.is_dummy(col)) picks[i] = reduced.argmin_state(i, col);
  }
  return MeasurementStructure(reduced.states(), std::move(picks));
}

CertificateCheck check_certificate(const ReducedCostMatrix& reduced,
                                   const AssignmentSolution& sol, double tolerance) {
  const std::size_t m = reduced.sensors();
  CertificateCheck out;
  if (sol.permutation.size() != m || sol.row_duals.size() != m || sol.col_duals.size() != m) {
    return out;
  }
  std::vector<char> seen(m, 0);
  out.bijective = true;
  for (Index col : sol.permutation) {
    if (col >= m || seen[col]) {
      out.bijective = false;
      break;
    }
    seen[col] = 1;
  }
  double dual_sum = 0.0, total = 0.0;
  for (Index i = 0; i < m; ++i) {
    dual_sum += sol.row_duals[i] + sol.col_duals[i];
    for (Index j = 0; j < m; ++j) {
      double gap = sol.row_duals[i] + sol.col_duals[j] - reduced.value(i, j);
      out.max_dual_violation = std::max(out.max_dual_violation, gap);
    }
    if (out.bijective) {
      double c = reduced.value(i, sol.permutation[i]);
      total += c;
      out.max_slack = std::max(
          out.max_slack, std::abs(sol.row_duals[i] + sol.col_duals[sol.permutation[i]] - c));
    }
  }
  out.objective_gap = std::max(std::abs(dual_sum - total), std::abs(total - sol.total_cost));
  out.ok = out.bijective && out.max_dual_violation <= tolerance && out.max_slack <= tolerance &&
           out.objective_gap <= tolerance;
  return out;
}

}  // namespace obsel
