#include "obsel/cost_model.hpp"

#include <algorithm>
#include <cmath>

namespace obsel {

InsufficientSensors::InsufficientSensors(std::size_t sensors, std::size_t parents)
    : Error("insufficient sensors for observability: " + std::to_string(sensors) +
            " sensors for " + std::to_string(parents) + " parent SCCs"),
      sensors(sensors),
      parents(parents) {}

double pseudo_cost_for(const CostMatrix& costs) {
  double product = costs.max_realizable() * static_cast<double>(costs.sensors()) *
                   static_cast<double>(costs.states());
  double sum = costs.sum_realizable();
  return product > sum ? product : sum + 1.0;
}

ReducedCostMatrix reduce_costs(const CostMatrix& costs,
                               const std::vector<std::vector<Index>>& parents) {
  const std::size_t m = costs.sensors();
  const std::size_t p = parents.size();
  if (p == 0) throw ValidationError("at least one parent SCC is required");
  if (m < p) throw InsufficientSensors(m, p);
  for (const auto& members : parents) {
    if (members.empty()) throw ValidationError("parent SCC with no members");
    for (Index s : members) {
      if (s >= costs.states()) {
        throw ValidationError("parent member x" + std::to_string(s + 1) +
                              " is outside the cost matrix");
      }
    }
  }

  ReducedCostMatrix out;
  out.m_ = m;
  out.p_ = p;
  out.n_ = costs.states();
  out.pseudo_cost_ = pseudo_cost_for(costs);
  out.values_.assign(m * m, 0.0);
  out.pseudo_.assign(m * m, 0);
  out.argmin_.assign(m * m, std::nullopt);

  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < p; ++j) {
      std::optional<Index> best;
      for (Index s : parents[j]) {
        const auto& c = costs.at(i, s);
        if (!c) continue;
        const auto& cur = best ? costs.at(i, *best) : std::optional<double>{};
        if (!best || *c < *cur || (*c == *cur && s < *best)) best = s;
      }
      const std::size_t k = i * m + j;
      if (best) {
        out.values_[k] = *costs.at(i, *best);
        out.argmin_[k] = best;
      } else {
        out.values_[k] = out.pseudo_cost_;
        out.pseudo_[k] = 1;
      }
    }
  }
  return out;
}

ReducedCostMatrix ReducedCostMatrix::from_values(std::size_t m, std::vector<double> values,
                                                 std::vector<bool> pseudo, double pseudo_cost) {
  if (m == 0 || values.size() != m * m) {
    throw ValidationError("cost matrix must be square and non-empty");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("cost matrix entries must be finite");
  }
  if (!pseudo.empty() && pseudo.size() != m * m) {
    throw ValidationError("pseudo mask must match the matrix size");
  }
  ReducedCostMatrix out;
  out.m_ = m;
  out.p_ = m;
  out.values_ = std::move(values);
  out.pseudo_.assign(m * m, 0);
  for (std::size_t k = 0; k < pseudo.size(); ++k) out.pseudo_[k] = pseudo[k] ? 1 : 0;
  out.argmin_.assign(m * m, std::nullopt);
  out.pseudo_cost_ = pseudo_cost;
  return out;
}

}  // namespace obsel
