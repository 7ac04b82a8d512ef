// Dense reference unitary. Each layer is written out as a sparse matrix from
// its definition on basis states (|x c s> -> image), using graph adjacency
// rather than the arc table's reverse permutation or the kernels' tables.
#include "cyclewalk/evolution.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cyclewalk {

namespace {

using Sparse = Eigen::SparseMatrix<std::complex<double>>;
using Triplet = Eigen::Triplet<std::complex<double>>;

Sparse from_triplets(std::size_t dim, const std::vector<Triplet>& t) {
  Sparse m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

// Rank of `x` among the ascending neighbors of `y`.
std::size_t port_of(const Graph& g, NodeId y, NodeId x) {
  const auto nbrs = g.neighbors(y);
  const auto it = std::find(nbrs.begin(), nbrs.end(), x);
  if (it == nbrs.end()) throw std::logic_error("not adjacent");
  return static_cast<std::size_t>(it - nbrs.begin());
}

}  // namespace

Eigen::MatrixXcd build_dense_unitary(const ArcTable& arcs) {
  const Graph& g = arcs.graph();
  require_valid(g);
  const auto dim = hilbert_dimension(g);
  if (dim > kDenseOracleMaxDim) {
    throw std::invalid_argument("dense unitary limited to dimension " +
                                std::to_string(kDenseOracleMaxDim));
  }
  std::vector<Triplet> coin, motion, exchange, ising;
  for (std::size_t col = 0; col < dim; ++col) {
    const auto [x, c, s] = decompose(arcs, col);
    const auto d = g.degree(x);
    const auto row = [&](NodeId node, std::size_t color, SpinConfig spins) {
      return static_cast<Eigen::Index>(basis_index(arcs, node, color, spins));
    };
    const auto j = static_cast<Eigen::Index>(col);

    for (std::size_t cp = 0; cp < d; ++cp) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(c * cp) /
                           static_cast<double>(d);
      coin.emplace_back(row(x, cp, s), j,
                        std::polar(1.0 / std::sqrt(static_cast<double>(d)), angle));
    }

    const NodeId y = g.neighbors(x)[c];
    motion.emplace_back(row(y, port_of(g, y, x), s), j, 1.0);

    if (c <= 1) {
      const std::size_t spin = spin_down(s, x) ? 1 : 0;
      const SpinConfig swapped = c ? (s | (1U << x)) : (s & ~(1U << x));
      exchange.emplace_back(row(x, spin, swapped), j, 1.0);
    } else {
      exchange.emplace_back(j, j, 1.0);
    }

    int down_pairs = 0;
    for (const auto& e : g.edges()) down_pairs += (spin_down(s, e.u) && spin_down(s, e.v)) ? 1 : 0;
    ising.emplace_back(j, j, down_pairs % 2 ? -1.0 : 1.0);
  }
  const Sparse u = from_triplets(dim, ising) * from_triplets(dim, exchange) *
                   from_triplets(dim, motion) * from_triplets(dim, coin);
  return Eigen::MatrixXcd(u);
}

}  // namespace cyclewalk
