#include "cyclewalk/graph.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <set>

using namespace cyclewalk;
using namespace cyclewalk::testing;

TEST(WattsStrogatz, FifteenNodesHasThirtyEdges) {
  const auto g = generate_watts_strogatz(15, 4, 0.35, 7);
  EXPECT_EQ(g.num_nodes(), 15u);
  EXPECT_EQ(g.num_edges(), 30u);
  EXPECT_TRUE(validate(g).ok);
  EXPECT_EQ(g.family(), GraphFamily::WattsStrogatz);
  EXPECT_EQ(g.params().k, 4);
  EXPECT_DOUBLE_EQ(g.params().p, 0.35);
  EXPECT_EQ(g.seed(), 7u);
}

TEST(WattsStrogatz, NoRewiringGivesRingLattice) {
  const auto g = generate_watts_strogatz(6, 4, 0.0, 123);
  ASSERT_EQ(g.num_edges(), 12u);
  for (NodeId x = 0; x < 6; ++x) {
    EXPECT_EQ(g.degree(x), 4u);
    for (NodeId off : {1u, 2u}) EXPECT_GE(g.edge_index(x, (x + off) % 6), 0);
  }
}

TEST(WattsStrogatz, EdgeCountIndependentOfRewiring) {
  for (double p : {0.0, 0.1, 0.35, 0.7, 1.0}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = generate_watts_strogatz(12, 4, p, seed);
      EXPECT_EQ(g.num_edges(), 24u) << "p=" << p << " seed=" << seed;
      EXPECT_TRUE(validate(g).ok);
    }
  }
}

TEST(WattsStrogatz, Deterministic) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    EXPECT_EQ(generate_watts_strogatz(15, 4, 0.35, seed), generate_watts_strogatz(15, 4, 0.35, seed));
  }
}

TEST(WattsStrogatz, RewiringActuallyHappens) {
  std::set<std::vector<Edge>> distinct;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate_watts_strogatz(15, 4, 0.35, seed);
    distinct.emplace(g.edges().begin(), g.edges().end());
  }
  EXPECT_GT(distinct.size(), 5u);
}

TEST(WattsStrogatz, RejectsBadParameters) {
  EXPECT_THROW(generate_watts_strogatz(15, 3, 0.35, 1), std::invalid_argument);
  EXPECT_THROW(generate_watts_strogatz(4, 4, 0.35, 1), std::invalid_argument);
  EXPECT_THROW(generate_watts_strogatz(15, 0, 0.35, 1), std::invalid_argument);
  EXPECT_THROW(generate_watts_strogatz(15, 4, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(generate_watts_strogatz(15, 4, -0.1, 1), std::invalid_argument);
}

TEST(ErdosRenyi, ProbabilityOneIsComplete) {
  EXPECT_EQ(generate_erdos_renyi(15, 1.0, 5).num_edges(), 105u);
  const auto k3 = generate_erdos_renyi(3, 1.0, 9);
  EXPECT_EQ(k3.num_edges(), 3u);
  EXPECT_EQ(k3, Graph(3, {{0, 1}, {0, 2}, {1, 2}}, GraphFamily::ErdosRenyi, {0, 1.0}, 9));
}

TEST(ErdosRenyi, EnsembleMeanDegree) {
  // Unconditioned expectation is 0.35 * 14 = 4.9; keeping only connected
  // draws with min degree 2 shifts the mean slightly upwards.
  double sum = 0.0;
  constexpr int kSeeds = 300;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const auto g = generate_erdos_renyi(15, 0.35, static_cast<std::uint64_t>(seed) * 1000);
    EXPECT_TRUE(validate(g).ok);
    sum += validate(g).mean_degree;
  }
  const double mean = sum / kSeeds;
  EXPECT_GT(mean, 4.7);
  EXPECT_LT(mean, 5.4);
}

TEST(ErdosRenyi, DeterministicAndValid) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = generate_erdos_renyi(12, 0.35, seed);
    EXPECT_EQ(g, generate_erdos_renyi(12, 0.35, seed));
    EXPECT_GE(validate(g).min_degree, 2u);
  }
}

TEST(ErdosRenyi, InfeasibleParametersFail) {
  EXPECT_THROW(generate_erdos_renyi(12, 0.01, 1), std::runtime_error);
  EXPECT_THROW(generate_erdos_renyi(2, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(generate_erdos_renyi(10, 0.0, 1), std::invalid_argument);
}

TEST(Validate, Triangle) {
  const auto r = validate(complete_graph(3));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.degrees, (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(r.components, 1u);
  EXPECT_TRUE(r.problem().empty());
}

TEST(Validate, TwoTrianglesDisconnected) {
  const Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const auto r = validate(g);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.connected);
  EXPECT_EQ(r.components, 2u);
  EXPECT_THROW(require_valid(g), std::invalid_argument);
}

TEST(Validate, PathHasDegreeOneEndpoints) {
  const auto r = validate(Graph(3, {{0, 1}, {1, 2}}));
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.connected);
  EXPECT_EQ(r.min_degree, 1u);
  EXPECT_EQ(r.max_degree, 2u);
  EXPECT_NEAR(r.mean_degree, 4.0 / 3.0, 1e-15);
}

TEST(Validate, ReportsMalformedEdgeLists) {
  const std::vector<Edge> loop = {{0, 1}, {1, 2}, {0, 2}, {1, 1}};
  const std::vector<Edge> dup = {{0, 1}, {1, 2}, {0, 2}, {2, 1}};
  const std::vector<Edge> range = {{0, 1}, {1, 2}, {0, 3}};
  EXPECT_TRUE(validate(3, loop).has_self_loops);
  EXPECT_TRUE(validate(3, dup).has_multi_edges);
  EXPECT_TRUE(validate(3, range).has_out_of_range);
  EXPECT_FALSE(validate(3, loop).ok);
  EXPECT_THROW(Graph(3, loop), std::invalid_argument);
  EXPECT_THROW(Graph(3, dup), std::invalid_argument);
  EXPECT_THROW(Graph(3, range), std::invalid_argument);
}

TEST(ArcTable, TriangleConvention) {
  const ArcTable t(complete_graph(3));
  ASSERT_EQ(t.num_arcs(), 6u);
  EXPECT_EQ(t.arc(0, 0), 0u);
  EXPECT_EQ(t.neighbor(0, 0), 1u);
  EXPECT_EQ(t.arc(0, 1), 1u);
  EXPECT_EQ(t.neighbor(0, 1), 2u);
  EXPECT_EQ(t.arc(1, 0), 2u);
  EXPECT_EQ(t.neighbor(1, 0), 0u);
  EXPECT_EQ(t.reverse(0), 2u);
  EXPECT_EQ(t.reverse(1), t.arc(2, 0));
  EXPECT_EQ(t.max_degree(), 2u);
  EXPECT_THROW(t.arc(0, 2), std::out_of_range);
}

TEST(ArcTable, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = seed % 2 ? generate_watts_strogatz(11, 4, 0.35, seed)
                            : generate_erdos_renyi(11, 0.4, seed);
    const ArcTable t(g);
    ASSERT_EQ(t.num_arcs(), 2 * g.num_edges());
    std::set<std::size_t> seen;
    for (NodeId x = 0; x < g.num_nodes(); ++x) {
      EXPECT_EQ(t.degree(x), g.degree(x));
      for (std::size_t c = 0; c < t.degree(x); ++c) {
        const auto a = t.arc(x, c);
        seen.insert(a);
        EXPECT_EQ(t.node_of(a), x);
        EXPECT_EQ(t.color_of(a), c);
        if (c > 0) EXPECT_LT(t.neighbor(x, c - 1), t.neighbor(x, c));
        const NodeId y = t.neighbor(x, c);
        const auto back = t.reverse(a);
        EXPECT_NE(back, a);
        EXPECT_EQ(t.reverse(back), a);
        EXPECT_EQ(t.node_of(back), y);
        EXPECT_EQ(t.target(back), x);
      }
    }
    EXPECT_EQ(seen.size(), t.num_arcs());
    EXPECT_EQ(*seen.rbegin(), t.num_arcs() - 1);
  }
}

TEST(GraphIo, RoundTrip) {
  TempDir dir;
  for (const auto& g : {complete_graph(3), generate_watts_strogatz(15, 4, 0.35, 7),
                        generate_erdos_renyi(10, 0.35, 42)}) {
    const auto path = dir.path() / "g.json";
    save_graph(g, path);
    EXPECT_EQ(load_graph(path), g);
  }
}

TEST(GraphIo, SchemaLayout) {
  const auto text = graph_to_json(Graph(3, {{2, 1}, {0, 2}, {1, 0}}));
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["schema"], "cyclewalk-graph-v1");
  EXPECT_EQ(j["num_nodes"], 3);
  EXPECT_EQ(j["edges"], nlohmann::json::parse("[[0,1],[0,2],[1,2]]"));
  EXPECT_EQ(j["family"], "explicit");
  EXPECT_EQ(j["rng"], "mt19937_64");
}

TEST(GraphIo, RejectsBadFiles) {
  auto doc = [](const std::string& edges) {
    return std::string(R"({"schema":"cyclewalk-graph-v1","num_nodes":3,"edges":)") + edges +
           R"(,"family":"explicit","params":{},"seed":0,"rng":"mt19937_64"})";
  };
  EXPECT_NO_THROW(graph_from_json(doc("[[0,1],[1,2],[0,2]]")));
  EXPECT_THROW(graph_from_json(doc("[[0,1],[1,2],[0,2],[2,1]]")), std::runtime_error);
  EXPECT_THROW(graph_from_json(doc("[[0,1],[1,3],[0,2]]")), std::runtime_error);
  EXPECT_THROW(graph_from_json(doc("[[0,1],[1,2]]")), std::runtime_error);  // degree 1
  EXPECT_NO_THROW(graph_from_json(doc("[[0,1],[1,2]]"), GraphCheck::SimpleOnly));
  EXPECT_THROW(graph_from_json("{not json"), std::runtime_error);
  EXPECT_THROW(graph_from_json(R"({"schema":"other","num_nodes":3,"edges":[]})"),
               std::runtime_error);
  EXPECT_THROW(load_graph("/nonexistent/graph.json"), std::runtime_error);
}

TEST(GraphHash, DistinguishesGraphs) {
  EXPECT_EQ(graph_hash(complete_graph(4)), graph_hash(complete_graph(4)));
  EXPECT_NE(graph_hash(complete_graph(4)), graph_hash(c4_chord()));
}
