#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obsel/cost_model.hpp"
#include "obsel/digraph.hpp"

namespace obsel {

inline constexpr double kDefaultTolerance = 1e-9;

struct AssignmentSolution {
  // permutation[sensor] = column of the reduced matrix (parent or dummy).
  std::vector<Index> permutation;
  // Realized measurement; present only for feasible solutions that carry
  // provenance (i.e. came from reduce_costs).
  std::optional<MeasurementStructure> measurement;
  double total_cost = 0.0;
  bool feasible = true;
  // Dual potentials: row_duals[i] + col_duals[j] <= C(i, j), with equality on
  // the selected entries.
  std::vector<double> row_duals;
  std::vector<double> col_duals;
};

/// Minimum-cost perfect assignment on the square reduced matrix, using the
/// O(m^3) shortest-augmenting-path Hungarian method. Potentials start from the
/// classical row/column reduction. Among optimal permutations the
/// lexicographically smallest one is returned.
AssignmentSolution solve_lsap(const ReducedCostMatrix& reduced);

/// Convenience overload for a raw row-major m x m matrix.
AssignmentSolution solve_lsap(std::size_t m, const std::vector<double>& values);

struct FeasibilityVerdict {
  bool feasible = true;
  // Parent columns with no realizable entry in any row.
  std::vector<Index> uncoverable_parents;
  // When no single column is to blame: a set of parent columns whose
  // realizable sensors are fewer than the set itself.
  std::vector<Index> hall_violator;
  std::string reason;
};

/// Throws ValidationError if `sol` does not match the dimensions of `reduced`.
FeasibilityVerdict feasibility_verdict(const AssignmentSolution& sol,
                                       const ReducedCostMatrix& reduced);

/// Sensor i measures argmin_state(i, permutation[i]); sensors on dummy
/// columns measure nothing. Throws Error if any selected entry is pseudo.
MeasurementStructure assemble_measurement(const std::vector<Index>& permutation,
                                          const ReducedCostMatrix& reduced);

struct CertificateCheck {
  bool ok = false;
  double max_dual_violation = 0.0;  // max over (i,j) of u_i + v_j - C(i,j), clipped at 0
  double max_slack = 0.0;           // max over i of |u_i + v_sigma(i) - C(i,sigma(i))|
  double objective_gap = 0.0;       // |sum(u) + sum(v) - total_cost|
  bool bijective = false;
};

/// Dual feasibility, complementary slackness and objective equality, each
/// within an additive tolerance.
CertificateCheck check_certificate(const ReducedCostMatrix& reduced,
                                   const AssignmentSolution& sol,
                                   double tolerance = kDefaultTolerance);

}  // namespace obsel
