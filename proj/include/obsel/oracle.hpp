#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obsel/digraph.hpp"

namespace obsel {

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

struct OracleLimits {
  std::size_t max_sensors = 8;
  std::size_t max_states = 16;
  // Upper bound on the product of per-sensor choice counts.
  std::uint64_t max_selections = 2'000'000;
};

struct Selection {
  std::vector<std::optional<Index>> picks;  // per sensor
  double cost = 0.0;
};

struct EnumerationReport {
  std::vector<Selection> observable;      // ascending cost
  std::vector<Selection> non_observable;  // ascending cost
  std::optional<double> min_observable_cost;
  std::size_t parent_count = 0;
};

/// Enumerates every selection in which each sensor measures one realizable
/// state and no state is measured twice. When there are more sensors than
/// parent SCCs a sensor may also stay idle. A selection is observable iff it
/// measures a state in every parent SCC. Throws InstanceTooLarge beyond
/// `limits`.
EnumerationReport enumerate_all(const StructuredSystem& sys, const CostMatrix& costs,
                                const OracleLimits& limits = {});

// ---------------------------------------------------------------------------
// Seeded instance generator
// ---------------------------------------------------------------------------

enum class Topology {
  kExample1,      // fixed 15-state layout: 4 parent SCCs, 2 child SCCs
  kParentChain,   // `parents` sink SCCs fed by chains of child SCCs
  kRandomCyclic,  // `scc_count` SCCs joined by a random condensation DAG
};

std::optional<Topology> parse_topology(const std::string& name);
std::string topology_name(Topology t);

struct GeneratorConfig {
  Topology topology = Topology::kExample1;
  std::size_t n = 0;          // 0: topology default (15 for example1)
  std::size_t m = 0;          // 0: the parent count of the topology
  std::size_t parents = 0;    // parent-chain only
  std::size_t scc_count = 0;  // random-cyclic only
  std::uint64_t seed = 0;
  double cost_low = 0.0;
  double cost_high = 10.0;
  bool integer_costs = false;  // draw integers uniformly in [cost_low, cost_high]
  double nonrealizable_prob = 0.5;
};

/// Deterministic for a fixed config. The system is structurally cyclic by
/// construction (every SCC is built around a spanning cycle). Throws
/// ValidationError on a contradictory config.
Instance generate(const GeneratorConfig& config);

/// Structure of the bundled 15-state example: parents {x1,x2,x3}, {x9,x10},
/// {x11,x12,x13}, {x14,x15}; children {x4,x5,x6}, {x7,x8}.
StructuredSystem example1_structure();

}  // namespace obsel
