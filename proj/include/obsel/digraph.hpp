#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace obsel {

// All node, sensor and component indices are 0-based inside the library.
// The JSON format and the CLI use 1-based indices (x1..xn).
using Index = std::size_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Directed edge x_from -> x_to, present iff A(to, from) is a structural nonzero.
struct Edge {
  Index from = 0;
  Index to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Zero/nonzero pattern of the system matrix, held as a digraph over n states.
///
/// Immutable once constructed. Edges are kept sorted by (from, to); self-loops
/// are allowed and count as ordinary edges.
class StructuredSystem {
 public:
  StructuredSystem() = default;

  /// Throws ValidationError on out-of-range endpoints, duplicate edges, n == 0,
  /// or a label count different from n.
  StructuredSystem(std::size_t n, std::vector<Edge> edges,
                   std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Targets of edges leaving `node`, ascending.
  std::span<const Index> out_neighbors(Index node) const;

  bool has_edge(Index from, Index to) const;

  const std::string& label(Index node) const;
  bool has_custom_labels() const { return custom_labels_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  // CSR adjacency over edges_, which is sorted by source.
  std::vector<std::size_t> offsets_;
  std::vector<Index> targets_;
  std::vector<std::string> labels_;
  bool custom_labels_ = false;
};

/// Sensor-to-state sensing costs. An empty optional marks a non-realizable
/// pair: that sensor cannot measure that state.
class CostMatrix {
 public:
  using Entry = std::optional<double>;

  CostMatrix() = default;

  /// `entries` is row-major, sensors x states. Throws ValidationError when a
  /// realizable cost is negative or not finite, or when a sensor row has no
  /// realizable entry.
  CostMatrix(std::size_t sensors, std::size_t states, std::vector<Entry> entries);

  std::size_t sensors() const { return m_; }
  std::size_t states() const { return n_; }

  const Entry& at(Index sensor, Index state) const { return entries_[sensor * n_ + state]; }
  bool realizable(Index sensor, Index state) const { return at(sensor, state).has_value(); }

  std::span<const Entry> row(Index sensor) const {
    return std::span<const Entry>(entries_).subspan(sensor * n_, n_);
  }

  /// Largest realizable cost, 0 when every realizable cost is 0.
  double max_realizable() const;
  /// Sum over every realizable entry.
  double sum_realizable() const;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<Entry> entries_;
};

/// The 0-1 measurement pattern: which state (if any) each sensor measures.
class MeasurementStructure {
 public:
  MeasurementStructure() = default;

  /// Throws ValidationError if a pick is out of range or two sensors share a state.
  MeasurementStructure(std::size_t states, std::vector<std::optional<Index>> picks);

  std::size_t sensors() const { return picks_.size(); }
  std::size_t states() const { return n_; }
  const std::optional<Index>& pick(Index sensor) const { return picks_[sensor]; }
  std::span<const std::optional<Index>> picks() const { return picks_; }

  /// True when every sensor measures some state.
  bool complete() const;

  /// Ascending list of measured states.
  std::vector<Index> measured_states() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::optional<Index>> picks_;
};

struct Instance {
  StructuredSystem system;
  CostMatrix costs;
};

}  // namespace obsel
