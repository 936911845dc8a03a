#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "obsel/oracle.hpp"
#include "obsel/random.hpp"
#include "obsel/structural.hpp"

namespace obsel {

namespace {

constexpr std::uint64_t kTopologyStream = 1;
constexpr std::uint64_t kCostStream = 2;

// 1-based edge list of the bundled example.
constexpr std::pair<int, int> kExample1Edges[] = {
    // parent {x1,x2,x3}
    {1, 1}, {1, 2}, {2, 3}, {3, 1}, {2, 1},
    // child {x4,x5,x6}
    {4, 5}, {5, 6}, {6, 4}, {5, 5},
    // child {x7,x8}
    {7, 8}, {8, 7},
    // parent {x9,x10}
    {9, 10}, {10, 9},
    // parent {x11,x12,x13}
    {11, 12}, {12, 13}, {13, 11}, {12, 11},
    // parent {x14,x15}
    {14, 15}, {15, 14}, {14, 14},
    // child -> other SCCs
    {4, 1}, {6, 9}, {7, 4}, {8, 11}, {8, 14},
};

struct Blocks {
  std::vector<std::vector<Index>> members;
  std::set<Edge> edges;
};

Index pick(RandomStream& rng, const std::vector<Index>& v) {
  return v[rng.uniform_int(0, v.size() - 1)];
}

// Splits a shuffled 0..n-1 into `count` non-empty blocks and closes each
// block with a spanning cycle plus a few random chords and self-loops.
Blocks make_blocks(RandomStream& rng, std::size_t n, std::size_t count) {
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_int(0, i - 1)]);

  std::vector<std::size_t> sizes(count, 1);
  for (std::size_t extra = n - count; extra > 0; --extra) ++sizes[rng.uniform_int(0, count - 1)];

  Blocks b;
  std::size_t at = 0;
  for (std::size_t size : sizes) {
    std::vector<Index> block(order.begin() + at, order.begin() + at + size);
    at += size;
    for (std::size_t k = 0; k < size; ++k) b.edges.insert({block[k], block[(k + 1) % size]});
    for (std::size_t k = 0; k < size / 2; ++k) {
      Index from = pick(rng, block), to = pick(rng, block);
      if (from != to) b.edges.insert({from, to});
    }
    for (Index v : block) {
      if (rng.bernoulli(0.2)) b.edges.insert({v, v});
    }
    b.members.push_back(std::move(block));
  }
  return b;
}

StructuredSystem parent_chain(const GeneratorConfig& cfg, RandomStream& rng) {
  const std::size_t n = cfg.n, p = cfg.parents != 0 ? cfg.parents : cfg.m;
  if (p == 0) throw ValidationError("parent-chain topology needs at least one parent");
  if (n < p) throw ValidationError("parent-chain topology needs n >= parents");
  std::size_t child_min = n > p ? 1 : 0;
  std::size_t child_max = std::max(child_min, (n - p) / 2);
  std::size_t children = rng.uniform_int(child_min, child_max);

  Blocks b = make_blocks(rng, n, p + children);
  // Block k >= p is a child: it feeds at least one earlier block, so the
  // condensation stays acyclic and the first p blocks are its only sinks.
  for (std::size_t k = p; k < b.members.size(); ++k) {
    std::size_t target = rng.uniform_int(0, k - 1);
    b.edges.insert({pick(rng, b.members[k]), pick(rng, b.members[target])});
    if (rng.bernoulli(0.3)) {
      std::size_t other = rng.uniform_int(0, k - 1);
      b.edges.insert({pick(rng, b.members[k]), pick(rng, b.members[other])});
    }
  }
  return StructuredSystem(n, {b.edges.begin(), b.edges.end()});
}

StructuredSystem random_cyclic(const GeneratorConfig& cfg, RandomStream& rng) {
  const std::size_t n = cfg.n, k = cfg.scc_count;
  if (k == 0 || k > n) throw ValidationError("random-cyclic topology needs 1 <= scc_count <= n");
  Blocks b = make_blocks(rng, n, k);
  for (std::size_t hi = 1; hi < k; ++hi) {
    for (std::size_t lo = 0; lo < hi; ++lo) {
      if (rng.bernoulli(0.3)) b.edges.insert({pick(rng, b.members[hi]), pick(rng, b.members[lo])});
    }
  }
  return StructuredSystem(n, {b.edges.begin(), b.edges.end()});
}

CostMatrix draw_costs(const GeneratorConfig& cfg, std::size_t m, std::size_t n) {
  std::vector<CostMatrix::Entry> entries(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    RandomStream rng(cfg.seed, kCostStream, i);
    bool any = false;
    while (!any) {
      for (std::size_t j = 0; j < n; ++j) {
        auto& e = entries[i * n + j];
        if (rng.bernoulli(cfg.nonrealizable_prob)) {
          e.reset();
          continue;
        }
        if (cfg.integer_costs) {
          auto lo = static_cast<std::uint64_t>(std::ceil(cfg.cost_low));
          auto hi = static_cast<std::uint64_t>(std::floor(cfg.cost_high));
          e = static_cast<double>(rng.uniform_int(lo, hi));
        } else {
          e = rng.uniform(cfg.cost_low, cfg.cost_high);
        }
        any = true;
      }
    }
  }
  return CostMatrix(m, n, std::move(entries));
}

}  // namespace

std::optional<Topology> parse_topology(const std::string& name) {
  if (name == "example1" || name == "example1-like") return Topology::kExample1;
  if (name == "parent-chain") return Topology::kParentChain;
  if (name == "random-cyclic") return Topology::kRandomCyclic;
  return std::nullopt;
}

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::kExample1:
      return "example1";
    case Topology::kParentChain:
      return "parent-chain";
    case Topology::kRandomCyclic:
      return "random-cyclic";
  }
  return "?";
}

StructuredSystem example1_structure() {
  std::vector<Edge> edges;
  for (auto [from, to] : kExample1Edges) {
    edges.push_back({static_cast<Index>(from - 1), static_cast<Index>(to - 1)});
  }
  return StructuredSystem(15, std::move(edges));
}

Instance generate(const GeneratorConfig& config) {
  if (!(config.nonrealizable_prob >= 0.0 && config.nonrealizable_prob < 1.0)) {
    throw ValidationError("non-realizable probability must be in [0, 1)");
  }
  if (!(config.cost_low >= 0.0 && config.cost_low <= config.cost_high) ||
      !std::isfinite(config.cost_high)) {
    throw ValidationError("cost range must satisfy 0 <= low <= high < inf");
  }
  if (config.integer_costs && std::ceil(config.cost_low) > std::floor(config.cost_high)) {
    throw ValidationError("integer cost range contains no integer");
  }

  GeneratorConfig cfg = config;
  RandomStream rng(cfg.seed, kTopologyStream, 0);
  StructuredSystem system;
  switch (cfg.topology) {
    case Topology::kExample1:
      if (cfg.n != 0 && cfg.n != 15) throw ValidationError("example1 topology has n=15");
      cfg.n = 15;
      system = example1_structure();
      break;
    case Topology::kParentChain:
      if (cfg.n == 0) throw ValidationError("parent-chain topology needs n");
      system = parent_chain(cfg, rng);
      break;
    case Topology::kRandomCyclic:
      if (cfg.n == 0) throw ValidationError("random-cyclic topology needs n");
      system = random_cyclic(cfg, rng);
      break;
  }

  std::size_t parents = parent_component_ids(scc_decompose(system)).size();
  if (cfg.m == 0) {
    cfg.m = parents;
  } else if (cfg.m != parents) {
    throw ValidationError("topology " + topology_name(cfg.topology) + " produced " +
                          std::to_string(parents) + " parent SCCs but m=" +
                          std::to_string(cfg.m));
  }
  CostMatrix costs = draw_costs(cfg, cfg.m, cfg.n);
  return Instance{std::move(system), std::move(costs)};
}

}  // namespace obsel
