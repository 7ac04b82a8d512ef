// hilbert.hpp - product space of walker arcs and node spins.
//
// A basis state |x c s> is stored at index a * 2^|V| + s, where a is the arc
// of (x, c) and bit x of s is the spin at node x (0 up, 1 down). All spin
// configurations of one arc are contiguous.
#pragma once

#include "cyclewalk/graph.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

namespace cyclewalk {

using Amplitude = std::complex<double>;
using SpinConfig = std::uint32_t;

// Largest node count the dense state layout accepts.
inline constexpr std::size_t kMaxSpinNodes = 25;

// 2|E| * 2^|V|. Throws std::overflow_error above kMaxSpinNodes nodes.
std::size_t hilbert_dimension(const Graph& g);

struct BasisState {
  NodeId node = 0;
  std::size_t color = 0;
  SpinConfig spins = 0;
  bool operator==(const BasisState&) const = default;
};

// Throws std::out_of_range for color >= degree(node) or spins out of range.
std::size_t basis_index(const ArcTable& arcs, NodeId node, std::size_t color, SpinConfig spins);
BasisState decompose(const ArcTable& arcs, std::size_t index);

inline bool spin_down(SpinConfig s, NodeId x) { return (s >> x) & 1U; }

class StateVector {
 public:
  explicit StateVector(std::shared_ptr<const ArcTable> arcs);

  const ArcTable& arcs() const { return *arcs_; }
  const std::shared_ptr<const ArcTable>& arcs_ptr() const { return arcs_; }

  std::size_t num_arcs() const { return arcs_->num_arcs(); }
  std::size_t num_spin_configs() const { return spin_configs_; }
  std::size_t size() const { return amplitudes_.size(); }

  std::span<Amplitude> amplitudes() { return amplitudes_; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }

  // The 2^|V| amplitudes of one arc.
  std::span<Amplitude> arc_block(std::size_t arc) {
    return std::span<Amplitude>(amplitudes_).subspan(arc * spin_configs_, spin_configs_);
  }
  std::span<const Amplitude> arc_block(std::size_t arc) const {
    return std::span<const Amplitude>(amplitudes_).subspan(arc * spin_configs_, spin_configs_);
  }

  Amplitude& at(std::size_t arc, SpinConfig s) { return amplitudes_[arc * spin_configs_ + s]; }
  const Amplitude& at(std::size_t arc, SpinConfig s) const {
    return amplitudes_[arc * spin_configs_ + s];
  }

  double norm() const;

 private:
  std::shared_ptr<const ArcTable> arcs_;
  std::size_t spin_configs_ = 0;
  std::vector<Amplitude> amplitudes_;
};

// Uniform superposition over nodes, color 0, all spins up.
StateVector initial_state(std::shared_ptr<const ArcTable> arcs);

// Binary checkpoint: "CWSTATE1", dimension and graph hash as little-endian
// u64, then interleaved (re, im) little-endian doubles.
void save_checkpoint(const StateVector& psi, const std::filesystem::path& path);
// Throws std::runtime_error on a bad header, a dimension or graph mismatch.
StateVector load_checkpoint(std::shared_ptr<const ArcTable> arcs,
                            const std::filesystem::path& path);

}  // namespace cyclewalk
