#include "cyclewalk/cycles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace cyclewalk {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

}  // namespace

CycleVector::CycleVector(std::size_t num_edges)
    : words_(words_for(num_edges), 0), num_edges_(num_edges) {}

CycleVector CycleVector::from_edges(std::size_t num_edges,
                                    std::span<const std::size_t> edge_ids) {
  CycleVector v(num_edges);
  for (auto e : edge_ids) v.flip(e);
  return v;
}

bool CycleVector::test(std::size_t edge) const {
  if (edge >= num_edges_) throw std::out_of_range("edge index out of range");
  return (words_[edge / kWordBits] >> (edge % kWordBits)) & 1U;
}

void CycleVector::set(std::size_t edge) {
  if (edge >= num_edges_) throw std::out_of_range("edge index out of range");
  words_[edge / kWordBits] |= std::uint64_t{1} << (edge % kWordBits);
}

void CycleVector::flip(std::size_t edge) {
  if (edge >= num_edges_) throw std::out_of_range("edge index out of range");
  words_[edge / kWordBits] ^= std::uint64_t{1} << (edge % kWordBits);
}

std::size_t CycleVector::length() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool CycleVector::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::vector<std::size_t> CycleVector::edge_ids() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (auto w = words_[i]; w != 0; w &= w - 1) {
      ids.push_back(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }
  return ids;
}

CycleVector& CycleVector::operator^=(const CycleVector& other) {
  if (other.num_edges_ != num_edges_) {
    throw std::invalid_argument("cycle vectors over different edge sets");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::strong_ordering CycleVector::operator<=>(const CycleVector& other) const {
  const auto a = edge_ids();
  const auto b = other.edge_ids();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

CycleVector ring_sum(const CycleVector& a, const CycleVector& b) {
  CycleVector out = a;
  out ^= b;
  return out;
}

std::size_t cycle_space_dimension(const Graph& g) {
  if (!validate(g).connected) {
    throw std::invalid_argument("cycle space dimension requires a connected graph");
  }
  return g.num_edges() + 1 - g.num_nodes();
}

bool in_cycle_space(const Graph& g, const CycleVector& v) {
  if (v.num_edges() != g.num_edges()) return false;
  std::vector<std::size_t> incidence(g.num_nodes(), 0);
  for (auto e : v.edge_ids()) {
    ++incidence[g.edges()[e].u];
    ++incidence[g.edges()[e].v];
  }
  return std::all_of(incidence.begin(), incidence.end(), [](auto d) { return d % 2 == 0; });
}

bool is_simple_cycle(const Graph& g, const CycleVector& v) {
  if (v.num_edges() != g.num_edges()) return false;
  const auto ids = v.edge_ids();
  if (ids.size() < 3) return false;
  std::vector<std::vector<NodeId>> adj(g.num_nodes());
  for (auto e : ids) {
    const auto edge = g.edges()[e];
    adj[edge.u].push_back(edge.v);
    adj[edge.v].push_back(edge.u);
  }
  std::size_t touched = 0;
  for (const auto& nbrs : adj) {
    if (nbrs.empty()) continue;
    if (nbrs.size() != 2) return false;
    ++touched;
  }
  // Degree-2 everywhere: the subgraph is a union of disjoint cycles; walk one.
  const NodeId start = g.edges()[ids.front()].u;
  NodeId prev = start;
  NodeId cur = adj[start][0];
  std::size_t steps = 1;
  while (cur != start) {
    const NodeId next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
    ++steps;
  }
  return steps == touched && touched == ids.size();
}

namespace {

// Incremental GF(2) elimination. Rows are kept fully reduced against the
// pivots of earlier rows.
class Gf2Eliminator {
 public:
  // Returns true and absorbs v when it is independent of the rows so far.
  bool insert(CycleVector v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v.test(pivots_[i])) v ^= rows_[i];
    }
    if (v.empty()) return false;
    const auto pivot = v.edge_ids().front();
    for (auto& row : rows_) {
      if (row.test(pivot)) row ^= v;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<CycleVector> rows_;
  std::vector<std::size_t> pivots_;
};

struct ShortestPathTree {
  std::vector<std::size_t> dist;
  std::vector<NodeId> parent;  // parent[root] == root
};

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

ShortestPathTree bfs_tree(const Graph& g, NodeId root) {
  const auto n = g.num_nodes();
  ShortestPathTree t{std::vector<std::size_t>(n, kUnreached), std::vector<NodeId>(n, root)};
  std::queue<NodeId> q;
  t.dist[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const auto x = q.front();
    q.pop();
    for (auto y : g.neighbors(x)) {
      if (t.dist[y] == kUnreached) {
        t.dist[y] = t.dist[x] + 1;
        q.push(y);
      }
    }
  }
  for (NodeId y = 0; y < n; ++y) {
    if (y == root || t.dist[y] == kUnreached) continue;
    for (auto z : g.neighbors(y)) {  // ascending, so the first hit is the smallest id
      if (t.dist[z] + 1 == t.dist[y]) {
        t.parent[y] = z;
        break;
      }
    }
  }
  return t;
}

}  // namespace

std::size_t gf2_rank(std::span<const CycleVector> vectors) {
  Gf2Eliminator elim;
  for (const auto& v : vectors) elim.insert(v);
  return elim.rank();
}

std::vector<CycleVector> horton_candidates(const Graph& g) {
  const auto n = g.num_nodes();
  const auto m = g.num_edges();
  std::vector<CycleVector> candidates;
  std::vector<char> on_path(n, 0);

  for (NodeId root = 0; root < n; ++root) {
    const auto tree = bfs_tree(g, root);
    for (std::size_t e = 0; e < m; ++e) {
      const auto [x, y] = g.edges()[e];
      if (tree.dist[x] == kUnreached || tree.dist[y] == kUnreached) continue;
      if (tree.parent[x] == y || tree.parent[y] == x) continue;  // tree edge

      std::fill(on_path.begin(), on_path.end(), 0);
      for (NodeId z = x; z != root; z = tree.parent[z]) on_path[z] = 1;
      bool disjoint = true;
      for (NodeId z = y; z != root; z = tree.parent[z]) {
        if (on_path[z]) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;

      CycleVector cycle(m);
      cycle.set(e);
      for (NodeId z : {x, y}) {
        for (; z != root; z = tree.parent[z]) {
          cycle.set(static_cast<std::size_t>(g.edge_index(z, tree.parent[z])));
        }
      }
      candidates.push_back(std::move(cycle));
    }
  }

  auto by_weight = [](const CycleVector& a, const CycleVector& b) {
    const auto la = a.length();
    const auto lb = b.length();
    if (la != lb) return la < lb;
    return a < b;
  };
  std::sort(candidates.begin(), candidates.end(), by_weight);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  return candidates;
}

CycleBasis minimum_cycle_basis(const Graph& g) {
  const auto dimension = cycle_space_dimension(g);
  CycleBasis basis;
  if (dimension == 0) return basis;

  Gf2Eliminator elim;
  for (auto& candidate : horton_candidates(g)) {
    if (elim.insert(candidate)) {
      basis.total_length += candidate.length();
      basis.cycles.push_back(std::move(candidate));
      if (basis.size() == dimension) break;
    }
  }
  if (basis.size() != dimension) {
    throw std::logic_error("Horton candidates do not span the cycle space");
  }
  return basis;
}

double conjectured_entropy(const CycleBasis& basis) {
  if (basis.cycles.empty() || basis.total_length == 0) {
    throw std::domain_error("cycle entropy undefined for an empty basis (acyclic graph)");
  }
  return std::log2(static_cast<double>(basis.total_length));
}

std::size_t girth(const Graph& g) {
  std::size_t best = kUnreached;
  for (NodeId root = 0; root < g.num_nodes(); ++root) {
    const auto tree = bfs_tree(g, root);
    for (const auto& [x, y] : g.edges()) {
      if (tree.dist[x] == kUnreached) continue;
      if (tree.parent[x] == y || tree.parent[y] == x) continue;
      best = std::min(best, tree.dist[x] + tree.dist[y] + 1);
    }
  }
  return best == kUnreached ? 0 : best;
}

}  // namespace cyclewalk
