#pragma once

#include <cstddef>
#include <vector>

namespace obsel {

// Maximum-cardinality matching on a bipartite graph (Hopcroft-Karp,
// O(E sqrt(V))). Left vertices are 0..left-1, right vertices 0..right-1.
class BipartiteMatcher {
 public:
  static constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

  BipartiteMatcher(std::size_t left, std::size_t right);

  void add_edge(std::size_t l, std::size_t r);

  // Runs to completion and returns the matching size. Adjacency lists are
  // scanned in insertion order, so the result is deterministic.
  std::size_t solve();

  std::size_t size() const { return size_; }
  std::size_t mate_of_left(std::size_t l) const { return mate_left_[l]; }
  std::size_t mate_of_right(std::size_t r) const { return mate_right_[r]; }

  // After solve(): right vertices reachable by alternating paths from the
  // unmatched right vertices. When the matching does not saturate the right
  // side, this set violates Hall's condition (|N(S)| < |S|).
  std::vector<std::size_t> hall_violator_right() const;

 private:
  bool bfs();
  bool augment(std::size_t root);

  std::size_t left_;
  std::size_t right_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> mate_left_;
  std::vector<std::size_t> mate_right_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> cursor_;
  std::size_t size_ = 0;
};

}  // namespace obsel
