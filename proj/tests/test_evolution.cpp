#include "cyclewalk/evolution.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cyclewalk;
using namespace cyclewalk::testing;

namespace {

Eigen::VectorXcd as_vector(const StateVector& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.size()));
  for (std::size_t i = 0; i < psi.size(); ++i) v[static_cast<Eigen::Index>(i)] = psi.amplitudes()[i];
  return v;
}

double max_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  return m;
}

std::vector<Graph> small_graphs() {
  return {complete_graph(3), complete_graph(4), c4_chord(), k23(), wheel(5)};
}

}  // namespace

TEST(FourierCoin, TwoIsHadamard) {
  const auto h = fourier_coin(2);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(h(0, 0) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(0, 1) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 0) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 1) + r), 0.0, 1e-15);
}

TEST(FourierCoin, UnitaryForAllDegrees) {
  for (std::size_t d = 2; d <= 14; ++d) {
    const auto f = fourier_coin(d);
    const auto id = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    EXPECT_LT((f * f.adjoint() - id).cwiseAbs().maxCoeff(), 1e-13) << d;
    // The uniform color superposition collapses onto color 0.
    const Eigen::VectorXcd u = Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(d), 1.0 / std::sqrt(double(d)));
    const Eigen::VectorXcd out = f * u;
    EXPECT_NEAR(std::abs(out[0] - 1.0), 0.0, 1e-13);
    EXPECT_LT(out.tail(static_cast<Eigen::Index>(d) - 1).norm(), 1e-13);
  }
}

TEST(Layers, EachPreservesNorm) {
  for (const auto& g : small_graphs()) {
    const auto arcs = arcs_of(g);
    const QuantumWalk walk(arcs);
    auto psi = random_state(arcs, 3);
    walk.apply_coin(psi);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-13);
    walk.apply_motion(psi);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-13);
    walk.apply_exchange(psi);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-13);
    walk.apply_ising(psi);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-13);
  }
}

TEST(Layers, MotionFollowsEdge) {
  const auto arcs = arcs_of(complete_graph(3));
  const QuantumWalk walk(arcs);
  for (SpinConfig s = 0; s < 8; ++s) {
    auto psi = basis_state(arcs, 0, 0, s);
    walk.apply_motion(psi);
    EXPECT_EQ(psi.amplitudes()[basis_index(*arcs, 1, 0, s)], Amplitude(1.0));
    EXPECT_NEAR(psi.norm(), 1.0, 0.0);
  }
  auto psi = basis_state(arcs, 0, 1, 0);  // 0 -> 2 lands on (2, color of 0 at node 2)
  walk.apply_motion(psi);
  EXPECT_EQ(psi.amplitudes()[basis_index(*arcs, 2, 0, 0)], Amplitude(1.0));
}

TEST(Layers, InvolutionsSquareToIdentity) {
  for (const auto& g : small_graphs()) {
    const auto arcs = arcs_of(g);
    const QuantumWalk walk(arcs);
    const auto psi0 = random_state(arcs, 8);
    for (auto layer : {&QuantumWalk::apply_motion, &QuantumWalk::apply_exchange,
                       &QuantumWalk::apply_ising}) {
      auto psi = psi0;
      (walk.*layer)(psi);
      EXPECT_GT(max_diff(psi, psi0), 1e-3);
      (walk.*layer)(psi);
      EXPECT_EQ(max_diff(psi, psi0), 0.0);
    }
  }
}

TEST(Layers, ExchangeSwapsColorBitWithLocalSpin) {
  const auto arcs = arcs_of(wheel(5));  // hub 0 has degree 5
  const QuantumWalk walk(arcs);
  auto check = [&](NodeId x, std::size_t c, SpinConfig s, NodeId x2, std::size_t c2, SpinConfig s2) {
    auto psi = basis_state(arcs, x, c, s);
    walk.apply_exchange(psi);
    EXPECT_EQ(psi.amplitudes()[basis_index(*arcs, x2, c2, s2)], Amplitude(1.0))
        << x << " " << c << " " << s;
  };
  check(0, 0, 0b000001, 0, 1, 0b000000);
  check(0, 1, 0b000000, 0, 0, 0b000001);
  check(0, 0, 0b000000, 0, 0, 0b000000);
  check(0, 1, 0b000001, 0, 1, 0b000001);
  check(0, 3, 0b000001, 0, 3, 0b000001);
  check(2, 0, 0b000100, 2, 1, 0b000000);
  check(2, 0, 0b000010, 2, 0, 0b000010);  // spin elsewhere is untouched
}

TEST(Layers, IsingPhase) {
  const auto g = complete_graph(3);
  const IsingPhaseTable table(g);
  EXPECT_FALSE(table.odd(0b000));
  EXPECT_FALSE(table.odd(0b001));
  EXPECT_TRUE(table.odd(0b011));
  EXPECT_TRUE(table.odd(0b111));  // three down-down edges
  const auto arcs = arcs_of(g);
  const QuantumWalk walk(arcs);
  auto psi = basis_state(arcs, 2, 1, 0b011);
  walk.apply_ising(psi);
  EXPECT_EQ(psi.amplitudes()[basis_index(*arcs, 2, 1, 0b011)], Amplitude(-1.0));
}

TEST(DenseOracle, Unitary) {
  for (const auto& g : small_graphs()) {
    const ArcTable t(g);
    const auto u = build_dense_unitary(t);
    const auto id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    EXPECT_LT((u * u.adjoint() - id).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DenseOracle, ColumnsMatchStepOnBasisStates) {
  const auto arcs = arcs_of(c4_chord());
  const auto u = build_dense_unitary(*arcs);
  const QuantumWalk walk(arcs);
  for (std::size_t i = 0; i < hilbert_dimension(arcs->graph()); ++i) {
    const auto b = decompose(*arcs, i);
    auto psi = basis_state(arcs, b.node, b.color, b.spins);
    walk.step(psi);
    ASSERT_LT((as_vector(psi) - u.col(static_cast<Eigen::Index>(i))).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DenseOracle, KernelsAgreeOnRandomStates) {
  for (const auto& g : small_graphs()) {
    const auto arcs = arcs_of(g);
    const auto u = build_dense_unitary(*arcs);
    const QuantumWalk walk(arcs);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto psi = random_state(arcs, seed);
      const Eigen::VectorXcd expected = u * as_vector(psi);
      walk.step(psi);
      EXPECT_LT((as_vector(psi) - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(DenseOracle, RefusesLargeSpaces) {
  EXPECT_THROW(build_dense_unitary(ArcTable(complete_graph(7))), std::invalid_argument);
}

TEST(QuantumWalk, ThreadCountDoesNotChangeBits) {
  const auto arcs = arcs_of(generate_erdos_renyi(10, 0.4, 2));
  auto a = initial_state(arcs);
  auto b = a;
  const QuantumWalk one(arcs, 1);
  const QuantumWalk four(arcs, 4);
  for (int t = 0; t < 20; ++t) {
    one.step(a);
    four.step(b);
  }
  EXPECT_EQ(max_diff(a, b), 0.0);
}

TEST(QuantumWalk, RejectsInvalidGraphs) {
  EXPECT_THROW(QuantumWalk(arcs_of(Graph(3, {{0, 1}, {1, 2}}))), std::invalid_argument);
}

TEST(QuantumWalk, LongRunKeepsNorm) {
  const auto arcs = arcs_of(generate_erdos_renyi(10, 0.35, 1));
  const QuantumWalk walk(arcs, 0);
  auto psi = initial_state(arcs);
  double worst = 0.0;
  for (int t = 0; t < 400; ++t) {
    walk.step(psi);
    worst = std::max(worst, std::abs(psi.norm() - 1.0));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Evolve, RowSchedule) {
  const auto arcs = arcs_of(complete_graph(4));
  const QuantumWalk walk(arcs);
  auto count = [&](std::size_t t_max, std::size_t every) {
    auto psi = initial_state(arcs);
    return evolve(walk, psi, {t_max, every}).rows;
  };
  EXPECT_EQ(count(0, 10).size(), 1u);
  EXPECT_EQ(count(10, 10).size(), 2u);
  const auto rows = count(400, 10);
  ASSERT_EQ(rows.size(), 41u);
  EXPECT_EQ(rows.back().t, 400u);
  EXPECT_EQ(count(25, 10).back().t, 20u);
}

TEST(Evolve, CustomHookSeesEveryMeasuredState) {
  const auto arcs = arcs_of(complete_graph(3));
  const QuantumWalk walk(arcs);
  auto psi = initial_state(arcs);
  std::vector<std::size_t> seen;
  evolve(walk, psi, {6, 2}, [&](const StateVector& s, std::size_t t) {
    seen.push_back(t);
    MeasurementRow r;
    r.t = t;
    r.norm = s.norm();
    return r;
  });
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 2, 4, 6}));
}
