#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obsel/digraph.hpp"

namespace obsel {

/// Maximum matching in the bipartite graph whose left side is the columns of
/// the structured matrix (edge sources) and whose right side is the rows (edge
/// targets). Its size is the structural rank.
struct MatchingResult {
  std::size_t size = 0;
  std::vector<Edge> matched_pairs;  // sorted by source
  bool is_perfect = false;
};

/// Strongly connected components in canonical form: components are ordered by
/// their smallest member and members ascend within each component.
struct SccDecomposition {
  std::vector<std::vector<Index>> components;
  std::vector<std::size_t> component_of;
  // Pairs (a, b), a != b, sorted and unique.
  std::vector<std::pair<std::size_t, std::size_t>> condensation_edges;
  // A parent component has no edge leaving it.
  std::vector<bool> parent_flags;

  std::size_t count() const { return components.size(); }
};

MatchingResult structural_rank(const StructuredSystem& sys);

/// True iff a disjoint family of cycles covers every state, i.e. the
/// structured matrix has full structural rank.
bool is_structurally_cyclic(const StructuredSystem& sys);

SccDecomposition scc_decompose(const StructuredSystem& sys);

/// Parent components in canonical order. Their count is the minimum number of
/// sensors a structurally cyclic system needs.
std::vector<std::vector<Index>> parent_sccs(const SccDecomposition& dec);

/// Component indices (into dec.components) of the parents, ascending.
std::vector<std::size_t> parent_component_ids(const SccDecomposition& dec);

struct ObservabilityVerdict {
  enum class Status { kObservable, kNotCyclic, kUncoveredParent };

  Status status = Status::kObservable;
  // For kUncoveredParent: the first parent (canonical order) with no measured state.
  std::vector<Index> uncovered_parent;
  std::size_t structural_rank = 0;
  std::string reason;

  bool observable() const { return status == Status::kObservable; }
};

/// Structural observability for structurally cyclic systems: every parent
/// component must contain a measured state. Rank-deficient systems get
/// kNotCyclic rather than a verdict. Throws ValidationError on dimension mismatch.
ObservabilityVerdict check_structural_observability(const StructuredSystem& sys,
                                                    const MeasurementStructure& meas);

/// Same check with a precomputed decomposition and rank.
ObservabilityVerdict check_structural_observability(const StructuredSystem& sys,
                                                    const SccDecomposition& dec,
                                                    std::size_t rank,
                                                    const MeasurementStructure& meas);

std::string describe_nodes(const StructuredSystem& sys, const std::vector<Index>& nodes);

}  // namespace obsel
