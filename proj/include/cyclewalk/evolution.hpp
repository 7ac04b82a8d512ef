// evolution.hpp - one step of the interacting walk, U = Z X M C.
//
//   C  Fourier coin on the colors of every node,
//   M  flip-flop shift moving arc (x->y) to (y->x),
//   X  swaps color value (0/1) with the spin at the walker's node,
//   Z  Ising phase (-1) for every edge whose two spins are down.
//
// Kernels work in place on disjoint index ranges, so the result does not
// depend on the number of threads.
#pragma once

#include "cyclewalk/hilbert.hpp"
#include "cyclewalk/observables.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace cyclewalk {

// d x d unitary with entries exp(2 pi i c c' / d) / sqrt(d).
Eigen::MatrixXcd fourier_coin(std::size_t d);

// One d-point Fourier matrix per distinct degree in the graph.
class CoinSet {
 public:
  explicit CoinSet(const ArcTable& arcs);
  const Eigen::MatrixXcd& operator()(std::size_t degree) const { return coins_.at(degree); }
  const std::map<std::size_t, Eigen::MatrixXcd>& all() const { return coins_; }

 private:
  std::map<std::size_t, Eigen::MatrixXcd> coins_;
};

// Parity of the number of edges with both spins down, one bit per spin
// configuration.
class IsingPhaseTable {
 public:
  explicit IsingPhaseTable(const Graph& g);
  bool odd(SpinConfig s) const { return parity_[s] != 0; }
  std::size_t size() const { return parity_.size(); }

 private:
  std::vector<unsigned char> parity_;
};

class QuantumWalk {
 public:
  // threads == 0 uses every hardware thread.
  explicit QuantumWalk(std::shared_ptr<const ArcTable> arcs, int threads = 1);

  const ArcTable& arcs() const { return *arcs_; }
  const std::shared_ptr<const ArcTable>& arcs_ptr() const { return arcs_; }
  int threads() const { return threads_; }

  void apply_coin(StateVector& psi) const;
  void apply_motion(StateVector& psi) const;
  void apply_exchange(StateVector& psi) const;
  void apply_ising(StateVector& psi) const;

  // C, then M, then X, then Z.
  void step(StateVector& psi) const;

 private:
  void check(const StateVector& psi) const;

  std::shared_ptr<const ArcTable> arcs_;
  int threads_ = 1;
  CoinSet coins_;
  IsingPhaseTable ising_;
};

using ObservableHook = std::function<MeasurementRow(const StateVector&, std::size_t t)>;

struct EvolveOptions {
  std::size_t t_max = 400;
  std::size_t measure_every = 10;
};

// Steps psi in place t_max times, calling `hook` at t = 0 and whenever t is a
// multiple of measure_every. The record's summary is left for summarize().
RunRecord evolve(const QuantumWalk& walk, StateVector& psi, const EvolveOptions& options,
                 const ObservableHook& hook = measure);

// Dense U assembled from per-layer matrices built directly from the operator
// definitions on the enumerated basis; independent of the in-place kernels.
inline constexpr std::size_t kDenseOracleMaxDim = 4096;
Eigen::MatrixXcd build_dense_unitary(const ArcTable& arcs);

}  // namespace cyclewalk
