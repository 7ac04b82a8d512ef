#include "cyclewalk/hilbert.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace cyclewalk {

namespace {

constexpr std::array<char, 8> kCheckpointMagic = {'C', 'W', 'S', 'T', 'A', 'T', 'E', '1'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

std::size_t hilbert_dimension(const Graph& g) {
  if (g.num_nodes() > kMaxSpinNodes) {
    throw std::overflow_error("spin space of " + std::to_string(g.num_nodes()) +
                              " nodes exceeds the supported " + std::to_string(kMaxSpinNodes));
  }
  return 2 * g.num_edges() * (std::size_t{1} << g.num_nodes());
}

std::size_t basis_index(const ArcTable& arcs, NodeId node, std::size_t color, SpinConfig spins) {
  const std::size_t configs = std::size_t{1} << arcs.num_nodes();
  if (spins >= configs) throw std::out_of_range("spin configuration out of range");
  return arcs.arc(node, color) * configs + spins;
}

BasisState decompose(const ArcTable& arcs, std::size_t index) {
  const std::size_t configs = std::size_t{1} << arcs.num_nodes();
  const std::size_t arc = index / configs;
  if (arc >= arcs.num_arcs()) throw std::out_of_range("basis index out of range");
  return {arcs.node_of(arc), arcs.color_of(arc), static_cast<SpinConfig>(index % configs)};
}

StateVector::StateVector(std::shared_ptr<const ArcTable> arcs) : arcs_(std::move(arcs)) {
  if (!arcs_) throw std::invalid_argument("state vector needs an arc table");
  hilbert_dimension(arcs_->graph());  // overflow guard
  spin_configs_ = std::size_t{1} << arcs_->num_nodes();
  amplitudes_.assign(arcs_->num_arcs() * spin_configs_, Amplitude{});
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector initial_state(std::shared_ptr<const ArcTable> arcs) {
  StateVector psi(std::move(arcs));
  const auto n = psi.arcs().num_nodes();
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (NodeId x = 0; x < n; ++x) psi.at(psi.arcs().arc(x, 0), 0) = amp;
  return psi;
}

void save_checkpoint(const StateVector& psi, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out.write(kCheckpointMagic.data(), kCheckpointMagic.size());
  write_u64(out, psi.size());
  write_u64(out, graph_hash(psi.arcs().graph()));
  out.write(reinterpret_cast<const char*>(psi.amplitudes().data()),
            static_cast<std::streamsize>(psi.size() * sizeof(Amplitude)));
  if (!out) throw std::runtime_error("failed writing checkpoint " + path.string());
}

StateVector load_checkpoint(std::shared_ptr<const ArcTable> arcs,
                            const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kCheckpointMagic) throw std::runtime_error("not a state checkpoint");
  const auto dimension = read_u64(in);
  const auto hash = read_u64(in);
  StateVector psi(std::move(arcs));
  if (dimension != psi.size()) throw std::runtime_error("checkpoint dimension mismatch");
  if (hash != graph_hash(psi.arcs().graph())) {
    throw std::runtime_error("checkpoint belongs to a different graph");
  }
  in.read(reinterpret_cast<char*>(psi.amplitudes().data()),
          static_cast<std::streamsize>(psi.size() * sizeof(Amplitude)));
  if (!in) throw std::runtime_error("truncated checkpoint " + path.string());
  return psi;
}

}  // namespace cyclewalk
