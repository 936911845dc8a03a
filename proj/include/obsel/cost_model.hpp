#pragma once

#include <optional>
#include <vector>

#include "obsel/digraph.hpp"

namespace obsel {

// Raised when there are fewer sensors than parent components.
class InsufficientSensors : public Error {
 public:
  InsufficientSensors(std::size_t sensors, std::size_t parents);
  std::size_t sensors;
  std::size_t parents;
};

/// Sensor x parent-component costs. Each entry is the cheapest realizable
/// state of that parent for that sensor; pairs with no realizable state carry
/// the pseudo-cost instead.
///
/// The matrix is always square (sensors x sensors). When there are more
/// sensors than parents the trailing columns are zero-cost dummies; a sensor
/// assigned to one of them measures nothing.
class ReducedCostMatrix {
 public:
  std::size_t sensors() const { return m_; }
  std::size_t parents() const { return p_; }
  std::size_t columns() const { return m_; }
  /// Number of states in the originating cost matrix (0 for raw matrices).
  std::size_t states() const { return n_; }

  double value(Index sensor, Index column) const { return values_[sensor * m_ + column]; }
  bool is_pseudo(Index sensor, Index column) const { return pseudo_[sensor * m_ + column] != 0; }
  bool is_dummy(Index column) const { return column >= p_; }
  /// State achieving the minimum; empty for pseudo and dummy entries.
  std::optional<Index> argmin_state(Index sensor, Index column) const {
    return argmin_[sensor * m_ + column];
  }
  double pseudo_cost() const { return pseudo_cost_; }

  /// Row-major m x m values.
  const std::vector<double>& values() const { return values_; }

  friend ReducedCostMatrix reduce_costs(const CostMatrix& costs,
                                        const std::vector<std::vector<Index>>& parents);

  /// Wraps a raw square matrix (no provenance, no pseudo entries). Used for
  /// driving the solver directly.
  static ReducedCostMatrix from_values(std::size_t m, std::vector<double> values,
                                       std::vector<bool> pseudo = {},
                                       double pseudo_cost = 0.0);

 private:
  std::size_t m_ = 0;
  std::size_t p_ = 0;
  std::size_t n_ = 0;
  std::vector<double> values_;
  std::vector<char> pseudo_;
  std::vector<std::optional<Index>> argmin_;
  double pseudo_cost_ = 0.0;
};

/// Pseudo-cost for a cost matrix: max(c) * m * n, raised to sum(c) + 1 when
/// that product does not strictly exceed the sum of all realizable costs.
double pseudo_cost_for(const CostMatrix& costs);

/// Reduces sensor x state costs to sensor x parent costs. Ties between
/// equally cheap states go to the lowest state index. Throws
/// InsufficientSensors when sensors < parents and ValidationError when a
/// parent member is outside the cost matrix or parents is empty.
ReducedCostMatrix reduce_costs(const CostMatrix& costs,
                               const std::vector<std::vector<Index>>& parents);

}  // namespace obsel
