#include "cyclewalk/graph.hpp"

#include "cyclewalk/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cyclewalk {

namespace {

constexpr const char* kGraphSchema = "cyclewalk-graph-v1";

std::vector<Edge> canonical_edges(std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

std::string to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::WattsStrogatz: return "ws";
    case GraphFamily::ErdosRenyi: return "er";
    case GraphFamily::Explicit: return "explicit";
  }
  return "explicit";
}

GraphFamily parse_family(const std::string& name) {
  if (name == "ws") return GraphFamily::WattsStrogatz;
  if (name == "er") return GraphFamily::ErdosRenyi;
  if (name == "explicit") return GraphFamily::Explicit;
  throw std::invalid_argument("unknown graph family '" + name + "'");
}

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges, GraphFamily family,
             GraphParams params, std::uint64_t seed)
    : edges_(canonical_edges(std::move(edges))),
      adjacency_(num_nodes),
      family_(family),
      params_(params),
      seed_(seed) {
  const auto report = validate(num_nodes, edges_);
  if (report.has_self_loops || report.has_multi_edges || report.has_out_of_range) {
    throw std::invalid_argument("graph is not simple: " + report.problem());
  }
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

std::ptrdiff_t Graph::edge_index(NodeId u, NodeId v) const {
  const Edge key = u < v ? Edge{u, v} : Edge{v, u};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return it - edges_.begin();
}

bool Graph::operator==(const Graph& other) const {
  return num_nodes() == other.num_nodes() && edges_ == other.edges_ &&
         family_ == other.family_ && params_ == other.params_ && seed_ == other.seed_;
}

std::string ValidationReport::problem() const {
  std::ostringstream os;
  const char* sep = "";
  auto add = [&](const std::string& s) {
    os << sep << s;
    sep = "; ";
  };
  if (has_out_of_range) add("edge endpoint out of range");
  if (has_self_loops) add("self-loop");
  if (has_multi_edges) add("duplicate edge");
  if (!connected) add("disconnected (" + std::to_string(components) + " components)");
  if (!degrees.empty() && min_degree < 2) {
    add("minimum degree " + std::to_string(min_degree) + " < 2");
  }
  if (degrees.empty()) add("no nodes");
  return os.str();
}

ValidationReport validate(std::size_t num_nodes, std::span<const Edge> edges) {
  ValidationReport r;
  r.degrees.assign(num_nodes, 0);
  std::vector<std::vector<NodeId>> adj(num_nodes);
  std::vector<Edge> seen;
  seen.reserve(edges.size());
  for (auto e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      r.has_out_of_range = true;
      continue;
    }
    if (e.u == e.v) {
      r.has_self_loops = true;
      continue;
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    seen.push_back(e);
    ++r.degrees[e.u];
    ++r.degrees[e.v];
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::sort(seen.begin(), seen.end());
  r.has_multi_edges = std::adjacent_find(seen.begin(), seen.end()) != seen.end();

  std::vector<char> visited(num_nodes, 0);
  for (std::size_t root = 0; root < num_nodes; ++root) {
    if (visited[root]) continue;
    ++r.components;
    std::queue<std::size_t> q;
    q.push(root);
    visited[root] = 1;
    while (!q.empty()) {
      const auto x = q.front();
      q.pop();
      for (auto y : adj[x]) {
        if (!visited[y]) {
          visited[y] = 1;
          q.push(y);
        }
      }
    }
  }
  r.connected = r.components == 1;

  if (num_nodes > 0) {
    const auto [lo, hi] = std::minmax_element(r.degrees.begin(), r.degrees.end());
    r.min_degree = *lo;
    r.max_degree = *hi;
    r.mean_degree = static_cast<double>(std::accumulate(r.degrees.begin(), r.degrees.end(),
                                                        std::size_t{0})) /
                    static_cast<double>(num_nodes);
  }
  r.ok = num_nodes > 0 && r.connected && !r.has_self_loops && !r.has_multi_edges &&
         !r.has_out_of_range && r.min_degree >= 2;
  return r;
}

ValidationReport validate(const Graph& g) { return validate(g.num_nodes(), g.edges()); }

void require_valid(const Graph& g) {
  const auto report = validate(g);
  if (!report.ok) throw std::invalid_argument("invalid graph: " + report.problem());
}

namespace {

// One Watts-Strogatz draw, following the usual lattice-then-rewire scheme:
// for each neighbor offset j, for each node u, the lattice edge (u, u+j) is
// moved to (u, w) with w uniform among nodes that are not u or already linked.
std::vector<Edge> watts_strogatz_draw(std::size_t n, int k, double p, Rng& rng) {
  std::vector<std::vector<char>> linked(n, std::vector<char>(n, 0));
  std::vector<std::size_t> degree(n, 0);
  auto link = [&](std::size_t a, std::size_t b, char on) {
    linked[a][b] = linked[b][a] = on;
    const std::size_t delta = on ? 1 : static_cast<std::size_t>(-1);
    degree[a] += delta;
    degree[b] += delta;
  };
  const auto half = static_cast<std::size_t>(k / 2);
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) link(u, (u + j) % n, 1);
  }
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      if (rng.uniform() >= p) continue;
      const std::size_t v = (u + j) % n;
      if (!linked[u][v] || degree[u] >= n - 1) continue;
      std::size_t w;
      do {
        w = rng.below(n);
      } while (w == u || linked[u][w]);
      link(u, v, 0);
      link(u, w, 1);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (linked[a][b]) edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }
  }
  return edges;
}

std::vector<Edge> erdos_renyi_draw(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (rng.uniform() < p) edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }
  }
  return edges;
}

template <class Draw>
Graph generate_until_valid(std::size_t n, GraphFamily family, GraphParams params,
                           std::uint64_t seed, Draw&& draw) {
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    auto edges = draw(rng);
    if (validate(n, edges).ok) return Graph(n, std::move(edges), family, params, seed);
  }
  throw std::runtime_error("no connected graph with minimum degree 2 after " +
                           std::to_string(kMaxGenerationAttempts) +
                           " attempts; parameters are likely infeasible");
}

}  // namespace

Graph generate_watts_strogatz(std::size_t n, int k, double p_rewire, std::uint64_t seed) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even and >= 2");
  if (n <= static_cast<std::size_t>(k)) throw std::invalid_argument("n must exceed k");
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) {
    throw std::invalid_argument("p_rewire must lie in [0, 1]");
  }
  return generate_until_valid(n, GraphFamily::WattsStrogatz, {k, p_rewire}, seed,
                              [&](Rng& rng) { return watts_strogatz_draw(n, k, p_rewire, rng); });
}

Graph generate_erdos_renyi(std::size_t n, double p_edge, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  if (!(p_edge > 0.0 && p_edge <= 1.0)) throw std::invalid_argument("p_edge must lie in (0, 1]");
  return generate_until_valid(n, GraphFamily::ErdosRenyi, {0, p_edge}, seed,
                              [&](Rng& rng) { return erdos_renyi_draw(n, p_edge, rng); });
}

std::string graph_to_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["schema"] = kGraphSchema;
  j["num_nodes"] = g.num_nodes();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  j["family"] = to_string(g.family());
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  switch (g.family()) {
    case GraphFamily::WattsStrogatz:
      params["k"] = g.params().k;
      params["p_rewire"] = g.params().p;
      break;
    case GraphFamily::ErdosRenyi:
      params["p_edge"] = g.params().p;
      break;
    case GraphFamily::Explicit:
      break;
  }
  j["params"] = std::move(params);
  j["seed"] = g.seed();
  j["rng"] = kRngName;
  return j.dump(2) + "\n";
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file " + path.string());
  out << graph_to_json(g);
  if (!out) throw std::runtime_error("failed writing graph file " + path.string());
}

Graph graph_from_json(const std::string& text, GraphCheck check) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("malformed graph JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != kGraphSchema) {
      throw std::runtime_error("unsupported graph schema '" + j.at("schema").get<std::string>() +
                               "'");
    }
    const auto n = j.at("num_nodes").get<std::int64_t>();
    if (n <= 0) throw std::runtime_error("num_nodes must be positive");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::runtime_error("edge must be a pair");
      const auto u = e[0].get<std::int64_t>();
      const auto v = e[1].get<std::int64_t>();
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw std::runtime_error("edge [" + std::to_string(u) + "," + std::to_string(v) +
                                 "] references a node outside [0, " + std::to_string(n) + ")");
      }
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    const auto family = parse_family(j.value("family", std::string("explicit")));
    GraphParams params;
    if (j.contains("params")) {
      const auto& p = j["params"];
      params.k = p.value("k", 0);
      if (family == GraphFamily::WattsStrogatz) params.p = p.value("p_rewire", 0.0);
      if (family == GraphFamily::ErdosRenyi) params.p = p.value("p_edge", 0.0);
    }
    const auto seed = j.value("seed", std::uint64_t{0});

    const auto report = validate(static_cast<std::size_t>(n), edges);
    if (report.has_self_loops || report.has_multi_edges || report.has_out_of_range ||
        (check == GraphCheck::Full && !report.ok)) {
      throw std::runtime_error("graph violates invariants: " + report.problem());
    }
    return Graph(static_cast<std::size_t>(n), std::move(edges), family, params, seed);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed graph JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

Graph load_graph(const std::filesystem::path& path, GraphCheck check) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return graph_from_json(buf.str(), check);
}

std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      h ^= (value >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(g.num_nodes());
  for (const auto& e : g.edges()) {
    mix(e.u);
    mix(e.v);
  }
  return h;
}

ArcTable::ArcTable(Graph g) : graph_(std::move(g)) {
  const auto n = graph_.num_nodes();
  offsets_.assign(n + 1, 0);
  for (NodeId x = 0; x < n; ++x) {
    offsets_[x + 1] = offsets_[x] + graph_.degree(x);
    max_degree_ = std::max(max_degree_, graph_.degree(x));
  }
  node_of_.resize(offsets_[n]);
  for (NodeId x = 0; x < n; ++x) {
    std::fill(node_of_.begin() + static_cast<std::ptrdiff_t>(offsets_[x]),
              node_of_.begin() + static_cast<std::ptrdiff_t>(offsets_[x + 1]), x);
  }
  reverse_.resize(node_of_.size());
  for (NodeId x = 0; x < n; ++x) {
    const auto nbrs = graph_.neighbors(x);
    for (std::size_t c = 0; c < nbrs.size(); ++c) {
      const NodeId y = nbrs[c];
      const auto back = graph_.neighbors(y);
      const auto rank = static_cast<std::size_t>(
          std::lower_bound(back.begin(), back.end(), x) - back.begin());
      reverse_[offsets_[x] + c] = offsets_[y] + rank;
    }
  }
}

std::size_t ArcTable::arc(NodeId x, std::size_t color) const {
  if (x >= num_nodes()) throw std::out_of_range("node out of range");
  if (color >= degree(x)) {
    throw std::out_of_range("color " + std::to_string(color) + " invalid at node " +
                            std::to_string(x) + " of degree " + std::to_string(degree(x)));
  }
  return offsets_[x] + color;
}

NodeId ArcTable::neighbor(NodeId x, std::size_t color) const {
  if (color >= degree(x)) throw std::out_of_range("color out of range");
  return graph_.neighbors(x)[color];
}

}  // namespace cyclewalk
