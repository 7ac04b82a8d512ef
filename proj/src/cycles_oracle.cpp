// Brute-force minimum cycle basis, kept deliberately separate from the Horton
// path in cycles.cpp: plain 64-bit masks, its own enumeration and its own
// elimination.
#include "cyclewalk/cycles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cyclewalk {

namespace {

struct CycleSearch {
  const Graph& g;
  NodeId start = 0;
  std::vector<char> visited;
  std::vector<NodeId> path;
  std::vector<std::uint64_t> found;

  void extend(NodeId x) {
    for (auto y : g.neighbors(x)) {
      if (y == start && path.size() >= 3) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          mask |= std::uint64_t{1} << g.edge_index(path[i], path[i + 1]);
        }
        mask |= std::uint64_t{1} << g.edge_index(path.back(), start);
        found.push_back(mask);
        continue;
      }
      // Cycles are rooted at their smallest vertex.
      if (y <= start || visited[y]) continue;
      visited[y] = 1;
      path.push_back(y);
      extend(y);
      path.pop_back();
      visited[y] = 0;
    }
  }
};

}  // namespace

std::vector<std::uint64_t> enumerate_simple_cycles(const Graph& g) {
  if (g.num_edges() > 64) throw std::invalid_argument("too many edges for mask enumeration");
  CycleSearch search{g, 0, std::vector<char>(g.num_nodes(), 0), {}, {}};
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    search.start = s;
    search.visited.assign(g.num_nodes(), 0);
    search.visited[s] = 1;
    search.path = {s};
    search.extend(s);
  }
  // Each cycle is found once per traversal direction.
  auto& cycles = search.found;
  std::sort(cycles.begin(), cycles.end());
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
  return cycles;
}

CycleBasis exhaustive_mcb_oracle(const Graph& g) {
  if (g.num_nodes() > kOracleMaxNodes) {
    throw std::invalid_argument("exhaustive oracle limited to " +
                                std::to_string(kOracleMaxNodes) + " nodes");
  }
  const auto dimension = cycle_space_dimension(g);
  auto cycles = enumerate_simple_cycles(g);

  // Lowest edge id first matches the lexicographic order of CycleVector.
  auto edge_list = [](std::uint64_t mask) {
    std::vector<int> ids;
    for (; mask != 0; mask &= mask - 1) ids.push_back(std::countr_zero(mask));
    return ids;
  };
  std::sort(cycles.begin(), cycles.end(), [&](std::uint64_t a, std::uint64_t b) {
    const int la = std::popcount(a);
    const int lb = std::popcount(b);
    if (la != lb) return la < lb;
    return edge_list(a) < edge_list(b);
  });

  // Basis keyed by highest set bit.
  std::vector<std::uint64_t> by_top_bit(64, 0);
  CycleBasis basis;
  for (auto mask : cycles) {
    if (basis.size() == dimension) break;
    std::uint64_t r = mask;
    while (r != 0) {
      const int top = 63 - std::countl_zero(r);
      if (by_top_bit[top] == 0) break;
      r ^= by_top_bit[top];
    }
    if (r == 0) continue;
    by_top_bit[63 - std::countl_zero(r)] = r;
    std::vector<std::size_t> ids;
    for (auto e : edge_list(mask)) ids.push_back(static_cast<std::size_t>(e));
    basis.cycles.push_back(CycleVector::from_edges(g.num_edges(), ids));
    basis.total_length += static_cast<std::size_t>(std::popcount(mask));
  }
  return basis;
}

}  // namespace cyclewalk
