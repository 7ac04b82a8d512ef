#include "cyclewalk/cycles.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>

using namespace cyclewalk;
using namespace cyclewalk::testing;

namespace {

CycleVector cycle_through(const Graph& g, const std::vector<NodeId>& nodes) {
  CycleVector v(g.num_edges());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto e = g.edge_index(nodes[i], nodes[(i + 1) % nodes.size()]);
    v.set(static_cast<std::size_t>(e));
  }
  return v;
}

}  // namespace

TEST(CycleSpace, Dimension) {
  EXPECT_EQ(cycle_space_dimension(complete_graph(3)), 1u);
  EXPECT_EQ(cycle_space_dimension(generate_watts_strogatz(15, 4, 0.35, 3)), 16u);
  EXPECT_EQ(cycle_space_dimension(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}})), 1u);
  EXPECT_EQ(cycle_space_dimension(Graph(3, {{0, 1}, {1, 2}})), 0u);
  EXPECT_THROW(cycle_space_dimension(Graph(4, {{0, 1}, {2, 3}})), std::invalid_argument);
}

TEST(RingSum, Algebra) {
  const auto g = c4_chord();  // triangles 0-1-2 and 0-2-3 share edge 0-2
  const auto t1 = cycle_through(g, {0, 1, 2});
  const auto t2 = cycle_through(g, {0, 2, 3});
  const CycleVector zero(g.num_edges());
  EXPECT_TRUE(ring_sum(t1, t1).empty());
  EXPECT_EQ(ring_sum(t1, zero), t1);
  const auto square = ring_sum(t1, t2);
  EXPECT_EQ(square, cycle_through(g, {0, 1, 2, 3}));
  EXPECT_EQ(square.length(), 4u);
  EXPECT_TRUE(in_cycle_space(g, square));
  EXPECT_THROW(ring_sum(t1, CycleVector(3)), std::invalid_argument);
}

TEST(CycleVector, OrderingAndBits) {
  auto a = CycleVector::from_edges(130, std::vector<std::size_t>{0, 2, 129});
  auto b = CycleVector::from_edges(130, std::vector<std::size_t>{0, 3});
  EXPECT_EQ(a.length(), 3u);
  EXPECT_TRUE(a.test(129));
  EXPECT_FALSE(a.test(128));
  EXPECT_EQ(a.edge_ids(), (std::vector<std::size_t>{0, 2, 129}));
  EXPECT_LT(a, b);
  EXPECT_THROW(a.test(130), std::out_of_range);
}

TEST(Horton, SmallGraphs) {
  const auto k3 = complete_graph(3);
  const auto c3 = horton_candidates(k3);
  ASSERT_EQ(c3.size(), 1u);
  EXPECT_EQ(c3[0].length(), 3u);

  const auto c5 = cycle_graph(5);
  const auto cand5 = horton_candidates(c5);
  ASSERT_EQ(cand5.size(), 1u);
  EXPECT_EQ(cand5[0].length(), 5u);
}

TEST(Horton, K4ContainsEveryTriangle) {
  const auto k4 = complete_graph(4);
  const auto cand = horton_candidates(k4);
  // Brute-force enumeration: K4 has 4 triangles and 3 four-cycles.
  const auto all = enumerate_simple_cycles(k4);
  ASSERT_EQ(all.size(), 7u);
  std::size_t triangles = 0;
  for (auto mask : all) {
    if (std::popcount(mask) != 3) continue;
    ++triangles;
    std::vector<std::size_t> ids;
    for (std::size_t e = 0; e < 6; ++e) {
      if ((mask >> e) & 1U) ids.push_back(e);
    }
    EXPECT_NE(std::find(cand.begin(), cand.end(), CycleVector::from_edges(6, ids)), cand.end());
  }
  EXPECT_EQ(triangles, 4u);
}

TEST(Horton, CandidatesAreSimpleCycles) {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_connected_graph(9, 0.4, rng);
    for (const auto& c : horton_candidates(g)) {
      EXPECT_TRUE(is_simple_cycle(g, c));
      EXPECT_TRUE(in_cycle_space(g, c));
    }
  }
}

TEST(MinimumCycleBasis, NamedGraphs) {
  const auto k3 = minimum_cycle_basis(complete_graph(3));
  EXPECT_EQ(k3.size(), 1u);
  EXPECT_EQ(k3.total_length, 3u);

  const auto k4 = minimum_cycle_basis(complete_graph(4));
  EXPECT_EQ(k4.size(), 3u);
  EXPECT_EQ(k4.total_length, 9u);
  for (const auto& c : k4.cycles) EXPECT_EQ(c.length(), 3u);

  const auto bip = minimum_cycle_basis(k23());
  EXPECT_EQ(bip.size(), 2u);
  EXPECT_EQ(bip.total_length, 8u);

  EXPECT_EQ(minimum_cycle_basis(wheel(5)).total_length, 15u);
  EXPECT_EQ(minimum_cycle_basis(cycle_graph(6)).total_length, 6u);
  EXPECT_EQ(minimum_cycle_basis(complete_graph(5)).total_length, 18u);
  EXPECT_EQ(minimum_cycle_basis(c4_chord()).total_length, 6u);

  // Petersen graph (girth 5): six 5-cycles. Value cross-checked with an
  // external MCB implementation.
  const Graph petersen(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7},
                            {3, 8}, {4, 9}, {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
  const auto pb = minimum_cycle_basis(petersen);
  EXPECT_EQ(pb.size(), 6u);
  EXPECT_EQ(pb.total_length, 30u);
}

TEST(MinimumCycleBasis, TreeHasEmptyBasis) {
  const auto b = minimum_cycle_basis(Graph(4, {{0, 1}, {1, 2}, {1, 3}}));
  EXPECT_EQ(b.size(), 0u);
  EXPECT_THROW(conjectured_entropy(b), std::domain_error);
  EXPECT_THROW(minimum_cycle_basis(Graph(4, {{0, 1}, {2, 3}})), std::invalid_argument);
}

TEST(ConjecturedEntropy, Values) {
  EXPECT_NEAR(conjectured_entropy(minimum_cycle_basis(complete_graph(4))), 3.169925001442312, 1e-12);
  EXPECT_NEAR(conjectured_entropy(minimum_cycle_basis(complete_graph(3))), 1.584962500721156, 1e-12);
  EXPECT_NEAR(conjectured_entropy(minimum_cycle_basis(cycle_graph(5))), 2.321928094887362, 1e-12);
}

TEST(Oracle, NamedGraphs) {
  EXPECT_EQ(exhaustive_mcb_oracle(complete_graph(4)).total_length, 9u);
  EXPECT_EQ(exhaustive_mcb_oracle(cycle_graph(6)).total_length, 6u);
  const auto w5 = exhaustive_mcb_oracle(wheel(5));
  EXPECT_EQ(w5.size(), 5u);
  EXPECT_EQ(w5.total_length, 15u);
  EXPECT_EQ(exhaustive_mcb_oracle(k23()).total_length, 8u);
  EXPECT_THROW(exhaustive_mcb_oracle(cycle_graph(9)), std::invalid_argument);
}

TEST(MinimumCycleBasis, MatchesOracleOnRandomGraphs) {
  Rng rng(2024);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = 3 + rng.below(6);  // 3..8
    const double p = 0.3 + 0.5 * rng.uniform();
    const auto g = random_connected_graph(n, p, rng);
    const auto fast = minimum_cycle_basis(g);
    const auto slow = exhaustive_mcb_oracle(g);
    ASSERT_EQ(fast.total_length, slow.total_length) << graph_to_json(g);
    ASSERT_EQ(fast.size(), cycle_space_dimension(g));
    EXPECT_EQ(gf2_rank(fast.cycles), fast.size());
    for (const auto& c : fast.cycles) EXPECT_TRUE(is_simple_cycle(g, c));
    EXPECT_TRUE(std::is_sorted(fast.cycles.begin(), fast.cycles.end(),
                               [](const CycleVector& a, const CycleVector& b) {
                                 return a.length() != b.length() ? a.length() < b.length() : a < b;
                               }));
    if (fast.size() > 0) EXPECT_EQ(fast.cycles.front().length(), girth(g));
  }
}

TEST(MinimumCycleBasis, DeterministicOnGeneratedGraphs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = generate_erdos_renyi(15, 0.35, seed);
    const auto a = minimum_cycle_basis(g);
    const auto b = minimum_cycle_basis(g);
    EXPECT_EQ(a.cycles, b.cycles);
    EXPECT_EQ(a.size(), g.num_edges() - g.num_nodes() + 1);
    EXPECT_EQ(gf2_rank(a.cycles), a.size());
    EXPECT_EQ(a.cycles.front().length(), girth(g));
  }
}

TEST(SimpleCycle, RejectsNonCycles) {
  const Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  auto two = cycle_through(g, {0, 1, 2});
  two ^= cycle_through(g, {3, 4, 5});
  EXPECT_TRUE(in_cycle_space(g, two));
  EXPECT_FALSE(is_simple_cycle(g, two));
  EXPECT_FALSE(in_cycle_space(g, CycleVector::from_edges(7, std::vector<std::size_t>{0})));
}
