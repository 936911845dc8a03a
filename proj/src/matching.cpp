#include "obsel/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace obsel {

namespace {
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
}

BipartiteMatcher::BipartiteMatcher(std::size_t left, std::size_t right)
    : left_(left),
      right_(right),
      adj_(left),
      mate_left_(left, kUnmatched),
      mate_right_(right, kUnmatched),
      dist_(left, kInf),
      cursor_(left, 0) {}

void BipartiteMatcher::add_edge(std::size_t l, std::size_t r) {
  if (l >= left_ || r >= right_) throw std::out_of_range("bipartite edge out of range");
  adj_[l].push_back(r);
}

bool BipartiteMatcher::bfs() {
  std::deque<std::size_t> queue;
  for (std::size_t l = 0; l < left_; ++l) {
    if (mate_left_[l] == kUnmatched) {
      dist_[l] = 0;
      queue.push_back(l);
    } else {
      dist_[l] = kInf;
    }
  }
  bool found = false;
  while (!queue.empty()) {
    std::size_t l = queue.front();
    queue.pop_front();
    for (std::size_t r : adj_[l]) {
      std::size_t next = mate_right_[r];
      if (next == kUnmatched) {
        found = true;
      } else if (dist_[next] == kInf) {
        dist_[next] = dist_[l] + 1;
        queue.push_back(next);
      }
    }
  }
  return found;
}

// Iterative layered DFS; an explicit stack keeps deep graphs off the call stack.
bool BipartiteMatcher::augment(std::size_t root) {
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    std::size_t l = stack.back();
    if (cursor_[l] == adj_[l].size()) {
      dist_[l] = kInf;
      stack.pop_back();
      if (!stack.empty()) ++cursor_[stack.back()];
      continue;
    }
    std::size_t r = adj_[l][cursor_[l]];
    std::size_t next = mate_right_[r];
    if (next == kUnmatched) {
      for (std::size_t lv : stack) {
        std::size_t rv = adj_[lv][cursor_[lv]];
        mate_left_[lv] = rv;
        mate_right_[rv] = lv;
      }
      return true;
    }
    if (dist_[next] != kInf && dist_[next] == dist_[l] + 1) {
      stack.push_back(next);
    } else {
      ++cursor_[l];
    }
  }
  return false;
}

std::size_t BipartiteMatcher::solve() {
  while (bfs()) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    for (std::size_t l = 0; l < left_; ++l) {
      if (mate_left_[l] == kUnmatched && augment(l)) ++size_;
    }
  }
  return size_;
}

std::vector<std::size_t> BipartiteMatcher::hall_violator_right() const {
  std::vector<std::vector<std::size_t>> radj(right_);
  for (std::size_t l = 0; l < left_; ++l) {
    for (std::size_t r : adj_[l]) radj[r].push_back(l);
  }
  std::vector<char> seen_right(right_, 0);
  std::vector<char> seen_left(left_, 0);
  std::deque<std::size_t> queue;
  for (std::size_t r = 0; r < right_; ++r) {
    if (mate_right_[r] == kUnmatched) {
      seen_right[r] = 1;
      queue.push_back(r);
    }
  }
  while (!queue.empty()) {
    std::size_t r = queue.front();
    queue.pop_front();
    for (std::size_t l : radj[r]) {
      if (seen_left[l]) continue;
      seen_left[l] = 1;
      std::size_t r2 = mate_left_[l];
      if (r2 != kUnmatched && !seen_right[r2]) {
        seen_right[r2] = 1;
        queue.push_back(r2);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < right_; ++r) {
    if (seen_right[r]) out.push_back(r);
  }
  return out;
}

}  // namespace obsel
