#include "obsel/structural.hpp"

#include <algorithm>
#include <limits>

#include "obsel/matching.hpp"

namespace obsel {

MatchingResult structural_rank(const StructuredSystem& sys) {
  const std::size_t n = sys.size();
  BipartiteMatcher matcher(n, n);
  for (const Edge& e : sys.edges()) matcher.add_edge(e.from, e.to);
  MatchingResult out;
  out.size = matcher.solve();
  for (Index j = 0; j < n; ++j) {
    std::size_t i = matcher.mate_of_left(j);
    if (i != BipartiteMatcher::kUnmatched) out.matched_pairs.push_back({j, i});
  }
  out.is_perfect = out.size == n;
  return out;
}

bool is_structurally_cyclic(const StructuredSystem& sys) { return structural_rank(sys).is_perfect; }

// Iterative Tarjan, then relabelled into canonical order.
SccDecomposition scc_decompose(const StructuredSystem& sys) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t n = sys.size();

  std::vector<std::size_t> index(n, kNone), low(n, 0), raw_comp(n, kNone);
  std::vector<char> on_stack(n, 0);
  std::vector<Index> stack;
  std::size_t next_index = 0, raw_count = 0;

  struct Frame {
    Index node;
    std::size_t cursor;
  };
  std::vector<Frame> call;

  for (Index start = 0; start < n; ++start) {
    if (index[start] != kNone) continue;
    call.push_back({start, 0});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = 1;

    while (!call.empty()) {
      Frame& f = call.back();
      auto succ = sys.out_neighbors(f.node);
      if (f.cursor < succ.size()) {
        Index w = succ[f.cursor++];
        if (index[w] == kNone) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      Index v = f.node;
      if (low[v] == index[v]) {
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          raw_comp[w] = raw_count;
        } while (w != v);
        ++raw_count;
      }
      call.pop_back();
      if (!call.empty()) {
        Index parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  // Canonical numbering: first appearance while scanning nodes ascending is
  // exactly "ordered by smallest member".
  std::vector<std::size_t> remap(raw_count, kNone);
  SccDecomposition dec;
  dec.component_of.resize(n);
  for (Index v = 0; v < n; ++v) {
    std::size_t& c = remap[raw_comp[v]];
    if (c == kNone) {
      c = dec.components.size();
      dec.components.emplace_back();
    }
    dec.components[c].push_back(v);
    dec.component_of[v] = c;
  }

  for (const Edge& e : sys.edges()) {
    std::size_t a = dec.component_of[e.from], b = dec.component_of[e.to];
    if (a != b) dec.condensation_edges.emplace_back(a, b);
  }
  std::sort(dec.condensation_edges.begin(), dec.condensation_edges.end());
  dec.condensation_edges.erase(
      std::unique(dec.condensation_edges.begin(), dec.condensation_edges.end()),
      dec.condensation_edges.end());

  dec.parent_flags.assign(dec.components.size(), true);
  for (const auto& [a, b] : dec.condensation_edges) dec.parent_flags[a] = false;
  return dec;
}

std::vector<std::size_t> parent_component_ids(const SccDecomposition& dec) {
  std::vector<std::size_t> ids;
  for (std::size_t c = 0; c < dec.components.size(); ++c) {
    if (dec.parent_flags[c]) ids.push_back(c);
  }
  return ids;
}

std::vector<std::vector<Index>> parent_sccs(const SccDecomposition& dec) {
  std::vector<std::vector<Index>> out;
  for (std::size_t c : parent_component_ids(dec)) out.push_back(dec.components[c]);
  return out;
}

std::string describe_nodes(const StructuredSystem& sys, const std::vector<Index>& nodes) {
  std::string out = "{";
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k) out += ",";
    out += sys.label(nodes[k]);
  }
  return out + "}";
}

ObservabilityVerdict check_structural_observability(const StructuredSystem& sys,
                                                    const SccDecomposition& dec,
                                                    std::size_t rank,
                                                    const MeasurementStructure& meas) {
  if (meas.states() != sys.size()) {
    throw ValidationError("measurement covers " + std::to_string(meas.states()) +
                          " states but the system has n=" + std::to_string(sys.size()));
  }
  ObservabilityVerdict verdict;
  verdict.structural_rank = rank;
  if (rank < sys.size()) {
    verdict.status = ObservabilityVerdict::Status::kNotCyclic;
    verdict.reason = "not structurally cyclic: structural rank " + std::to_string(rank) +
                     " < n=" + std::to_string(sys.size());
    return verdict;
  }

  std::vector<char> covered(dec.count(), 0);
  for (Index s : meas.measured_states()) covered[dec.component_of[s]] = 1;
  for (std::size_t c : parent_component_ids(dec)) {
    if (!covered[c]) {
      verdict.status = ObservabilityVerdict::Status::kUncoveredParent;
      verdict.uncovered_parent = dec.components[c];
      verdict.reason = "parent SCC " + describe_nodes(sys, dec.components[c]) +
                       " has no measured state";
      return verdict;
    }
  }
  verdict.reason = "observable";
  return verdict;
}

ObservabilityVerdict check_structural_observability(const StructuredSystem& sys,
                                                    const MeasurementStructure& meas) {
  if (meas.states() != sys.size()) {
    throw ValidationError("measurement covers " + std::to_string(meas.states()) +
                          " states but the system has n=" + std::to_string(sys.size()));
  }
  return check_structural_observability(sys, scc_decompose(sys), structural_rank(sys).size,
                                        meas);
}

}  // namespace obsel
