// graph.hpp - simple undirected graphs, random generators and the arc table
// that fixes the color (port) labelling used by the walk.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace cyclewalk {

using NodeId = std::uint32_t;

enum class GraphFamily { WattsStrogatz, ErdosRenyi, Explicit };

std::string to_string(GraphFamily family);  // "ws" | "er" | "explicit"
GraphFamily parse_family(const std::string& name);

// Generation parameters. `k` is only meaningful for Watts-Strogatz; `p` is the
// rewiring probability (WS) or the edge probability (ER).
struct GraphParams {
  int k = 0;
  double p = 0.0;
  bool operator==(const GraphParams&) const = default;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph. Edges are stored canonically (u < v, sorted), so
// the position of an edge in edges() is its canonical index. Construction
// rejects self-loops, duplicates and out-of-range endpoints; connectivity and
// minimum degree are checked separately by validate().
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t num_nodes, std::vector<Edge> edges,
        GraphFamily family = GraphFamily::Explicit, GraphParams params = {},
        std::uint64_t seed = 0);

  std::size_t num_nodes() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  // Neighbors of x in strictly ascending node id.
  std::span<const NodeId> neighbors(NodeId x) const { return adjacency_.at(x); }
  std::size_t degree(NodeId x) const { return adjacency_.at(x).size(); }

  // Canonical index of edge {u, v}, or -1 when absent.
  std::ptrdiff_t edge_index(NodeId u, NodeId v) const;

  GraphFamily family() const { return family_; }
  const GraphParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }

  bool operator==(const Graph& other) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  GraphFamily family_ = GraphFamily::Explicit;
  GraphParams params_;
  std::uint64_t seed_ = 0;
};

struct ValidationReport {
  bool ok = false;
  bool connected = false;
  std::size_t components = 0;
  bool has_self_loops = false;
  bool has_multi_edges = false;
  bool has_out_of_range = false;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  double mean_degree = 0.0;
  std::vector<std::size_t> degrees;

  // Human-readable reason for !ok, empty when ok.
  std::string problem() const;
};

// Checks an arbitrary edge list, so malformed input can be reported rather
// than rejected.
ValidationReport validate(std::size_t num_nodes, std::span<const Edge> edges);
ValidationReport validate(const Graph& g);

// Throws std::invalid_argument carrying the report's problem when !ok.
void require_valid(const Graph& g);

// Number of generation attempts before a generator gives up.
inline constexpr int kMaxGenerationAttempts = 1000;

// Watts-Strogatz small world: ring lattice with k/2 neighbors on each side,
// each lattice edge rewired with probability p_rewire. Attempt i uses seed + i
// until the result is connected with minimum degree 2.
Graph generate_watts_strogatz(std::size_t n, int k, double p_rewire,
                              std::uint64_t seed);

// Erdos-Renyi G(n, p): every unordered pair independently with probability
// p_edge, retried as above.
Graph generate_erdos_renyi(std::size_t n, double p_edge, std::uint64_t seed);

enum class GraphCheck { Full, SimpleOnly };

void save_graph(const Graph& g, const std::filesystem::path& path);
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text,
                      GraphCheck check = GraphCheck::Full);
Graph load_graph(const std::filesystem::path& path,
                 GraphCheck check = GraphCheck::Full);

// 64-bit FNV-1a over node count and canonical edges. Used to tie checkpoints
// to the graph they were produced on.
std::uint64_t graph_hash(const Graph& g);

// Dense (node, color) -> arc numbering, node-major then color-minor. Color c
// at node x points to the c-th neighbor of x in ascending id order.
class ArcTable {
 public:
  explicit ArcTable(Graph g);

  const Graph& graph() const { return graph_; }
  std::size_t num_nodes() const { return graph_.num_nodes(); }
  std::size_t num_arcs() const { return node_of_.size(); }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t degree(NodeId x) const { return offsets_.at(x + 1) - offsets_.at(x); }

  // First arc of node x; arcs of x are [first_arc(x), first_arc(x) + degree(x)).
  std::size_t first_arc(NodeId x) const { return offsets_.at(x); }

  // Throws std::out_of_range when color >= degree(x).
  std::size_t arc(NodeId x, std::size_t color) const;
  NodeId node_of(std::size_t arc) const { return node_of_.at(arc); }
  std::size_t color_of(std::size_t arc) const { return arc - offsets_.at(node_of_.at(arc)); }
  NodeId neighbor(NodeId x, std::size_t color) const;
  NodeId target(std::size_t arc) const { return neighbor(node_of(arc), color_of(arc)); }

  // Arc (x -> y) maps to (y -> x).
  std::size_t reverse(std::size_t arc) const { return reverse_.at(arc); }
  std::span<const std::size_t> reverse_permutation() const { return reverse_; }

 private:
  Graph graph_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> node_of_;
  std::vector<std::size_t> reverse_;
  std::size_t max_degree_ = 0;
};

}  // namespace cyclewalk
