// cycles.hpp - GF(2) cycle space and minimum cycle basis.
#pragma once

#include "cyclewalk/graph.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cyclewalk {

// Edge-incidence vector over GF(2), indexed by canonical edge order.
class CycleVector {
 public:
  CycleVector() = default;
  explicit CycleVector(std::size_t num_edges);
  static CycleVector from_edges(std::size_t num_edges, std::span<const std::size_t> edge_ids);

  std::size_t num_edges() const { return num_edges_; }
  bool test(std::size_t edge) const;
  void set(std::size_t edge);
  void flip(std::size_t edge);

  // Number of edges set. For a simple cycle this is also its node count.
  std::size_t length() const;
  bool empty() const;

  std::vector<std::size_t> edge_ids() const;
  std::span<const std::uint64_t> words() const { return words_; }

  CycleVector& operator^=(const CycleVector& other);

  // Lexicographic on the ascending edge-id lists, so cycles built from
  // lower-indexed edges order first.
  std::strong_ordering operator<=>(const CycleVector& other) const;
  bool operator==(const CycleVector& other) const = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t num_edges_ = 0;
};

// Symmetric difference. Throws std::invalid_argument on mismatched universes.
CycleVector ring_sum(const CycleVector& a, const CycleVector& b);

struct CycleBasis {
  std::vector<CycleVector> cycles;  // (length, lexicographic) order
  std::size_t total_length = 0;

  std::size_t size() const { return cycles.size(); }
};

// |E| - |V| + 1. Throws std::invalid_argument for a disconnected graph.
std::size_t cycle_space_dimension(const Graph& g);

// Every vertex has even degree in the edge subset.
bool in_cycle_space(const Graph& g, const CycleVector& v);
// The edge subset is one connected cycle on which every vertex has degree 2.
bool is_simple_cycle(const Graph& g, const CycleVector& v);

// Rank over GF(2).
std::size_t gf2_rank(std::span<const CycleVector> vectors);

// Horton candidate cycles: for every root v and edge (x, y), the cycle
// P(v,x) + (x,y) + P(y,v) whenever the two BFS-tree paths share only v.
// BFS parents are the smallest-id neighbor one level closer to the root.
// Sorted and deduplicated.
std::vector<CycleVector> horton_candidates(const Graph& g);

// Greedy matroid selection over the Horton candidates.
CycleBasis minimum_cycle_basis(const Graph& g);

// log2 of the basis total length, in bits. Throws std::domain_error for an
// empty basis.
double conjectured_entropy(const CycleBasis& basis);

// Length of a shortest cycle, 0 for a forest.
std::size_t girth(const Graph& g);

// Test oracle: enumerates every simple cycle and runs an exact greedy over
// all of them. Throws std::invalid_argument above kOracleMaxNodes nodes.
inline constexpr std::size_t kOracleMaxNodes = 8;
CycleBasis exhaustive_mcb_oracle(const Graph& g);
// All simple cycles as edge-id bitmasks (|E| <= 64).
std::vector<std::uint64_t> enumerate_simple_cycles(const Graph& g);

}  // namespace cyclewalk
