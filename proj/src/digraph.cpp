#include "obsel/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace obsel {

StructuredSystem::StructuredSystem(std::size_t n, std::vector<Edge> edges,
                                   std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (n_ == 0) throw ValidationError("system must have at least one state");
  for (const Edge& e : edges_) {
    if (e.from >= n_ || e.to >= n_) {
      throw ValidationError("edge (" + std::to_string(e.from + 1) + ", " +
                            std::to_string(e.to + 1) + ") out of range for n=" +
                            std::to_string(n_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->from + 1) + ", " +
                          std::to_string(dup->to + 1) + ")");
  }

  if (labels_.empty()) {
    labels_.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) labels_.push_back("x" + std::to_string(i + 1));
  } else if (labels_.size() != n_) {
    throw ValidationError("expected " + std::to_string(n_) + " labels, got " +
                          std::to_string(labels_.size()));
  } else {
    custom_labels_ = true;
  }

  offsets_.assign(n_ + 1, 0);
  targets_.reserve(edges_.size());
  for (const Edge& e : edges_) {
    ++offsets_[e.from + 1];
    targets_.push_back(e.to);
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

std::span<const Index> StructuredSystem::out_neighbors(Index node) const {
  if (node >= n_) {
    throw ValidationError("node " + std::to_string(node + 1) + " out of range for n=" +
                          std::to_string(n_));
  }
  return std::span<const Index>(targets_).subspan(offsets_[node],
                                                  offsets_[node + 1] - offsets_[node]);
}

bool StructuredSystem::has_edge(Index from, Index to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

const std::string& StructuredSystem::label(Index node) const { return labels_.at(node); }

CostMatrix::CostMatrix(std::size_t sensors, std::size_t states, std::vector<Entry> entries)
    : m_(sensors), n_(states), entries_(std::move(entries)) {
  if (m_ == 0) throw ValidationError("cost matrix must have at least one sensor");
  if (n_ == 0) throw ValidationError("cost matrix must have at least one state");
  if (entries_.size() != m_ * n_) {
    throw ValidationError("cost matrix has " + std::to_string(entries_.size()) +
                          " entries, expected " + std::to_string(m_ * n_));
  }
  for (std::size_t i = 0; i < m_; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n_; ++j) {
      const Entry& e = at(i, j);
      if (!e) continue;
      if (!std::isfinite(*e) || *e < 0.0) {
        throw ValidationError("cost at sensor " + std::to_string(i + 1) + ", state " +
                              std::to_string(j + 1) + " must be finite and non-negative");
      }
      any = true;
    }
    if (!any) {
      throw ValidationError("sensor " + std::to_string(i + 1) + " has no realizable state");
    }
  }
}

double CostMatrix::max_realizable() const {
  double best = 0.0;
  for (const Entry& e : entries_) {
    if (e) best = std::max(best, *e);
  }
  return best;
}

double CostMatrix::sum_realizable() const {
  double total = 0.0;
  for (const Entry& e : entries_) {
    if (e) total += *e;
  }
  return total;
}

MeasurementStructure::MeasurementStructure(std::size_t states,
                                           std::vector<std::optional<Index>> picks)
    : n_(states), picks_(std::move(picks)) {
  std::vector<char> used(n_, 0);
  for (std::size_t i = 0; i < picks_.size(); ++i) {
    if (!picks_[i]) continue;
    Index s = *picks_[i];
    if (s >= n_) {
      throw ValidationError("sensor " + std::to_string(i + 1) + " measures state " +
                            std::to_string(s + 1) + ", out of range for n=" +
                            std::to_string(n_));
    }
    if (used[s]) {
      throw ValidationError("state " + std::to_string(s + 1) +
                            " is measured by more than one sensor");
    }
    used[s] = 1;
  }
}

bool MeasurementStructure::complete() const {
  return std::all_of(picks_.begin(), picks_.end(), [](const auto& p) { return p.has_value(); });
}

std::vector<Index> MeasurementStructure::measured_states() const {
  std::vector<Index> out;
  for (const auto& p : picks_) {
    if (p) out.push_back(*p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace obsel
