#include "cyclewalk/evolution.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cyclewalk {

namespace {

// Spin configurations processed together by one coin work item.
constexpr std::size_t kCoinTile = 256;

}  // namespace

Eigen::MatrixXcd fourier_coin(std::size_t d) {
  if (d == 0) throw std::invalid_argument("coin dimension must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd c(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * j) % d) /
                           static_cast<double>(d);
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::polar(scale, angle);
    }
  }
  return c;
}

CoinSet::CoinSet(const ArcTable& arcs) {
  for (NodeId x = 0; x < arcs.num_nodes(); ++x) {
    const auto d = arcs.degree(x);
    if (!coins_.contains(d)) coins_.emplace(d, fourier_coin(d));
  }
}

IsingPhaseTable::IsingPhaseTable(const Graph& g) {
  const std::size_t configs = std::size_t{1} << g.num_nodes();
  parity_.assign(configs, 0);
  for (std::size_t s = 0; s < configs; ++s) {
    unsigned char p = 0;
    for (const auto& e : g.edges()) p ^= static_cast<unsigned char>((s >> e.u) & (s >> e.v) & 1U);
    parity_[s] = p;
  }
}

QuantumWalk::QuantumWalk(std::shared_ptr<const ArcTable> arcs, int threads)
    : arcs_(std::move(arcs)),
      threads_(threads > 0 ? threads : omp_get_max_threads()),
      coins_((require_valid(arcs_->graph()), *arcs_)),
      ising_(arcs_->graph()) {}

void QuantumWalk::check(const StateVector& psi) const {
  if (&psi.arcs() != arcs_.get() && !(psi.arcs().graph() == arcs_->graph())) {
    throw std::invalid_argument("state vector belongs to a different graph");
  }
}

void QuantumWalk::apply_coin(StateVector& psi) const {
  check(psi);
  const auto configs = psi.num_spin_configs();
  const auto tiles = (configs + kCoinTile - 1) / kCoinTile;
  const auto nodes = arcs_->num_nodes();
  const auto items = static_cast<std::ptrdiff_t>(nodes * tiles);
  auto* amps = psi.amplitudes().data();

#pragma omp parallel num_threads(threads_)
  {
    std::vector<Amplitude> in;
    std::vector<Amplitude> out;
#pragma omp for schedule(static)
    for (std::ptrdiff_t item = 0; item < items; ++item) {
      const auto x = static_cast<NodeId>(static_cast<std::size_t>(item) / tiles);
      const auto s0 = (static_cast<std::size_t>(item) % tiles) * kCoinTile;
      const auto width = std::min(kCoinTile, configs - s0);
      const auto d = arcs_->degree(x);
      const auto first = arcs_->first_arc(x);
      const auto& coin = coins_(d);

      in.resize(d * width);
      out.assign(d * width, Amplitude{});
      for (std::size_t c = 0; c < d; ++c) {
        const auto* src = amps + (first + c) * configs + s0;
        std::copy(src, src + width, in.begin() + static_cast<std::ptrdiff_t>(c * width));
      }
      for (std::size_t c = 0; c < d; ++c) {
        auto* dst = out.data() + c * width;
        for (std::size_t cp = 0; cp < d; ++cp) {
          const Amplitude w = coin(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(cp));
          const auto* src = in.data() + cp * width;
          for (std::size_t s = 0; s < width; ++s) dst[s] += w * src[s];
        }
      }
      for (std::size_t c = 0; c < d; ++c) {
        const auto* src = out.data() + c * width;
        std::copy(src, src + width, amps + (first + c) * configs + s0);
      }
    }
  }
}

void QuantumWalk::apply_motion(StateVector& psi) const {
  check(psi);
  const auto arcs = static_cast<std::ptrdiff_t>(arcs_->num_arcs());
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::ptrdiff_t a = 0; a < arcs; ++a) {
    const auto back = arcs_->reverse(static_cast<std::size_t>(a));
    if (back <= static_cast<std::size_t>(a)) continue;
    auto lhs = psi.arc_block(static_cast<std::size_t>(a));
    auto rhs = psi.arc_block(back);
    std::swap_ranges(lhs.begin(), lhs.end(), rhs.begin());
  }
}

void QuantumWalk::apply_exchange(StateVector& psi) const {
  check(psi);
  const auto nodes = static_cast<std::ptrdiff_t>(arcs_->num_nodes());
  const auto configs = psi.num_spin_configs();
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::ptrdiff_t xi = 0; xi < nodes; ++xi) {
    const auto x = static_cast<NodeId>(xi);
    // (x, c=0, s_x=1) <-> (x, c=1, s_x=0); colors >= 2 are untouched.
    const auto color0 = psi.arc_block(arcs_->arc(x, 0));
    const auto color1 = psi.arc_block(arcs_->arc(x, 1));
    const std::size_t bit = std::size_t{1} << x;
    for (std::size_t s = 0; s < configs; ++s) {
      if (s & bit) std::swap(color0[s], color1[s ^ bit]);
    }
  }
}

void QuantumWalk::apply_ising(StateVector& psi) const {
  check(psi);
  const auto arcs = static_cast<std::ptrdiff_t>(arcs_->num_arcs());
  const auto configs = psi.num_spin_configs();
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::ptrdiff_t a = 0; a < arcs; ++a) {
    auto block = psi.arc_block(static_cast<std::size_t>(a));
    for (std::size_t s = 0; s < configs; ++s) {
      if (ising_.odd(static_cast<SpinConfig>(s))) block[s] = -block[s];
    }
  }
}

void QuantumWalk::step(StateVector& psi) const {
  apply_coin(psi);
  apply_motion(psi);
  apply_exchange(psi);
  apply_ising(psi);
}

RunRecord evolve(const QuantumWalk& walk, StateVector& psi, const EvolveOptions& options,
                 const ObservableHook& hook) {
  if (options.measure_every == 0) throw std::invalid_argument("measure_every must be >= 1");
  RunRecord record;
  record.rows.push_back(hook(psi, 0));
  for (std::size_t t = 1; t <= options.t_max; ++t) {
    walk.step(psi);
    if (t % options.measure_every == 0) record.rows.push_back(hook(psi, t));
  }
  return record;
}

}  // namespace cyclewalk
