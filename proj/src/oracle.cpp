#include "obsel/oracle.hpp"

#include <algorithm>

#include "obsel/instance_io.hpp"
#include "obsel/structural.hpp"

namespace obsel {

namespace {

class Enumerator {
 public:
  Enumerator(const CostMatrix& costs, const SccDecomposition& dec, const OracleLimits& limits,
             bool allow_idle)
      : costs_(costs),
        dec_(dec),
        limits_(limits),
        allow_idle_(allow_idle),
        parent_ids_(parent_component_ids(dec)),
        used_(costs.states(), 0),
        picks_(costs.sensors()) {}

  void run(EnumerationReport& report) {
    report_ = &report;
    descend(0, 0.0);
  }

 private:
  void descend(Index sensor, double cost) {
    if (sensor == costs_.sensors()) {
      record(cost);
      return;
    }
    for (Index s = 0; s < costs_.states(); ++s) {
      const auto& c = costs_.at(sensor, s);
      if (!c || used_[s]) continue;
      used_[s] = 1;
      picks_[sensor] = s;
      descend(sensor + 1, cost + *c);
      used_[s] = 0;
    }
    if (allow_idle_) {
      picks_[sensor] = std::nullopt;
      descend(sensor + 1, cost);
    }
  }

  void record(double cost) {
    if (++count_ > limits_.max_selections) {
      throw InstanceTooLarge("enumeration exceeds " + std::to_string(limits_.max_selections) +
                             " selections");
    }
    std::vector<char> covered(dec_.count(), 0);
    for (const auto& p : picks_) {
      if (p) covered[dec_.component_of[*p]] = 1;
    }
    bool observable = std::all_of(parent_ids_.begin(), parent_ids_.end(),
                                  [&](std::size_t c) { return covered[c] != 0; });
    (observable ? report_->observable : report_->non_observable).push_back({picks_, cost});
  }

  const CostMatrix& costs_;
  const SccDecomposition& dec_;
  const OracleLimits& limits_;
  bool allow_idle_;
  std::vector<std::size_t> parent_ids_;
  std::vector<char> used_;
  std::vector<std::optional<Index>> picks_;
  EnumerationReport* report_ = nullptr;
  std::uint64_t count_ = 0;
};

bool selection_less(const Selection& a, const Selection& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  // Idle (nullopt) sorts before any state.
  return a.picks < b.picks;
}

}  // namespace

EnumerationReport enumerate_all(const StructuredSystem& sys, const CostMatrix& costs,
                                const OracleLimits& limits) {
  check_dimensions(sys, costs);
  if (costs.sensors() > limits.max_sensors || costs.states() > limits.max_states) {
    throw InstanceTooLarge("instance too large for enumeration: m=" +
                           std::to_string(costs.sensors()) + ", n=" +
                           std::to_string(costs.states()) + " (limits m<=" +
                           std::to_string(limits.max_sensors) + ", n<=" +
                           std::to_string(limits.max_states) + ")");
  }
  SccDecomposition dec = scc_decompose(sys);
  EnumerationReport report;
  report.parent_count = parent_component_ids(dec).size();

  Enumerator(costs, dec, limits, costs.sensors() > report.parent_count).run(report);

  std::sort(report.observable.begin(), report.observable.end(), selection_less);
  std::sort(report.non_observable.begin(), report.non_observable.end(), selection_less);
  if (!report.observable.empty()) report.min_observable_cost = report.observable.front().cost;
  return report;
}

}  // namespace obsel
