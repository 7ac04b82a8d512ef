#include "cyclewalk/observables.hpp"

#include "cyclewalk/cycles.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace cyclewalk {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kBoundSlack = 1e-9;

Eigen::Map<const RowMajorMatrix> as_matrix(const StateVector& psi) {
  return {psi.amplitudes().data(), static_cast<Eigen::Index>(psi.num_arcs()),
          static_cast<Eigen::Index>(psi.num_spin_configs())};
}

}  // namespace

std::vector<double> position_distribution(const StateVector& psi) {
  const auto& arcs = psi.arcs();
  std::vector<double> p(arcs.num_nodes(), 0.0);
  for (std::size_t a = 0; a < arcs.num_arcs(); ++a) {
    double sum = 0.0;
    for (const auto& amp : psi.arc_block(a)) sum += std::norm(amp);
    p[arcs.node_of(a)] += sum;
  }
  return p;
}

std::vector<double> microcanonical_distribution(const Graph& g) {
  std::vector<double> p(g.num_nodes());
  const double total = 2.0 * static_cast<double>(g.num_edges());
  for (NodeId x = 0; x < g.num_nodes(); ++x) p[x] = static_cast<double>(g.degree(x)) / total;
  return p;
}

double total_variation_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in size");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

double mean_spin_z(const StateVector& psi) {
  const auto n = psi.arcs().num_nodes();
  const auto configs = psi.num_spin_configs();
  std::vector<double> weight(configs, 0.0);
  for (std::size_t a = 0; a < psi.num_arcs(); ++a) {
    const auto block = psi.arc_block(a);
    for (std::size_t s = 0; s < configs; ++s) weight[s] += std::norm(block[s]);
  }
  double sz = 0.0;
  for (std::size_t s = 0; s < configs; ++s) {
    const int down = std::popcount(static_cast<SpinConfig>(s));
    sz += weight[s] * (static_cast<double>(n) - 2.0 * down);
  }
  return sz / static_cast<double>(n);
}

DensityMatrix particle_gram(const StateVector& psi) {
  const auto m = as_matrix(psi);
  const auto dim = m.rows();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
  g.selfadjointView<Eigen::Lower>().rankUpdate(m);
  for (Eigen::Index i = 0; i < dim; ++i) {
    g(i, i) = g(i, i).real();
    for (Eigen::Index j = i + 1; j < dim; ++j) g(i, j) = std::conj(g(j, i));
  }
  return {std::move(g), Subsystem::Particle};
}

DensityMatrix reduced_density_position(const ArcTable& arcs, const DensityMatrix& gram) {
  const auto n = arcs.num_nodes();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      const auto shared = std::min(arcs.degree(x), arcs.degree(y));
      std::complex<double> sum{};
      for (std::size_t c = 0; c < shared; ++c) {
        sum += gram.matrix(static_cast<Eigen::Index>(arcs.arc(x, c)),
                           static_cast<Eigen::Index>(arcs.arc(y, c)));
      }
      rho(x, y) = sum;
    }
  }
  return {std::move(rho), Subsystem::Position};
}

DensityMatrix reduced_density_position(const StateVector& psi) {
  return reduced_density_position(psi.arcs(), particle_gram(psi));
}

DensityMatrix reduced_density_color(const ArcTable& arcs, const DensityMatrix& gram) {
  const auto d = static_cast<Eigen::Index>(arcs.max_degree());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (NodeId x = 0; x < arcs.num_nodes(); ++x) {
    const auto first = static_cast<Eigen::Index>(arcs.first_arc(x));
    const auto deg = static_cast<Eigen::Index>(arcs.degree(x));
    rho.topLeftCorner(deg, deg) += gram.matrix.block(first, first, deg, deg);
  }
  return {std::move(rho), Subsystem::Color};
}

DensityMatrix reduced_density_color(const StateVector& psi) {
  return reduced_density_color(psi.arcs(), particle_gram(psi));
}

DensityMatrix reduced_density_spin(const StateVector& psi) {
  if (psi.arcs().num_nodes() > 12) {
    throw std::invalid_argument("dense spin density matrix limited to 12 nodes");
  }
  const auto configs = static_cast<Eigen::Index>(psi.num_spin_configs());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(configs, configs);
  for (std::size_t a = 0; a < psi.num_arcs(); ++a) {
    const auto block = psi.arc_block(a);
    for (Eigen::Index s = 0; s < configs; ++s) {
      for (Eigen::Index t = 0; t < configs; ++t) {
        rho(s, t) += block[static_cast<std::size_t>(s)] * std::conj(block[static_cast<std::size_t>(t)]);
      }
    }
  }
  return {std::move(rho), Subsystem::Spin};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto& m = rho.matrix;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) {
    throw std::invalid_argument("density matrix trace " + format_double(trace) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  double s = 0.0;
  for (const double lambda : solver.eigenvalues()) {
    if (lambda > kEigenvalueClamp) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

PageEntropy page_entropy(std::size_t subsystem_dim, std::size_t total_dim) {
  if (subsystem_dim == 0 || total_dim == 0) {
    throw std::invalid_argument("Page entropy needs positive dimensions");
  }
  const double da = static_cast<double>(subsystem_dim);
  const double d = static_cast<double>(total_dim);
  return {std::log2(da) - da * da / (2.0 * d * std::numbers::ln2),
          subsystem_dim * subsystem_dim <= total_dim};
}

MeasurementRow measure(const StateVector& psi, std::size_t t) {
  const auto& arcs = psi.arcs();
  MeasurementRow row;
  row.t = t;
  row.norm = psi.norm();
  row.positions = position_distribution(psi);
  row.sz_mean = mean_spin_z(psi);

  const auto gram = particle_gram(psi);
  row.S_s = von_neumann_entropy(gram);
  row.S_x = von_neumann_entropy(reduced_density_position(arcs, gram));
  row.S_c = von_neumann_entropy(reduced_density_color(arcs, gram));

  const auto n = arcs.num_nodes();
  const double sx_max = std::log2(static_cast<double>(n));
  const double sc_max = std::log2(static_cast<double>(arcs.max_degree()));
  const double ss_max = std::min(std::log2(static_cast<double>(arcs.num_arcs())),
                                 static_cast<double>(n));
  if (row.S_x > sx_max + kBoundSlack || row.S_c > sc_max + kBoundSlack ||
      row.S_s > ss_max + kBoundSlack) {
    throw std::runtime_error("entropy outside its dimension bound at t=" + std::to_string(t));
  }
  double total = 0.0;
  for (double p : row.positions) {
    if (p < 0.0) throw std::runtime_error("negative position probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::runtime_error("position probabilities sum to " + format_double(total));
  }
  return row;
}

double late_time_mean_spin_entropy(const std::vector<MeasurementRow>& rows, std::size_t t_max) {
  if (rows.empty()) throw std::invalid_argument("no measurement rows");
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : rows) {
    if (4 * r.t > 3 * t_max) {
      sum += r.S_s;
      ++count;
    }
  }
  return count == 0 ? rows.back().S_s : sum / static_cast<double>(count);
}

void summarize(RunRecord& record, const Graph& g, std::size_t t_max) {
  auto& s = record.summary;
  s.S_s_late = late_time_mean_spin_entropy(record.rows, t_max);
  s.S_s_final = record.rows.back().S_s;

  const auto basis = minimum_cycle_basis(g);
  s.B_size = basis.size();
  s.B_total_length = basis.total_length;
  s.S_C.reset();
  s.ratio_conjecture.reset();
  if (basis.size() > 0) {
    s.S_C = conjectured_entropy(basis);
    s.ratio_conjecture = s.S_s_late / *s.S_C;
  }

  const auto page = page_entropy(2 * g.num_edges(), hilbert_dimension(g));
  s.S_page = page.bits;
  s.page_within_validity = page.within_validity;
  s.ratio_page.reset();
  if (page.bits > 0.0) s.ratio_page = s.S_s_late / page.bits;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_timeseries_csv(std::ostream& out, const RunRecord& record, std::size_t num_nodes) {
  out << "t,S_x,S_c,S_s,sz_mean";
  for (std::size_t x = 0; x < num_nodes; ++x) out << ",p_" << x;
  out << '\n';
  for (const auto& r : record.rows) {
    out << r.t << ',' << format_double(r.S_x) << ',' << format_double(r.S_c) << ','
        << format_double(r.S_s) << ',' << format_double(r.sz_mean);
    for (double p : r.positions) out << ',' << format_double(p);
    out << '\n';
  }
}

std::string summary_json(const RunRecord& record, const Graph& g) {
  const auto& s = record.summary;
  auto optional_number = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  const auto report = validate(g);
  nlohmann::ordered_json j;
  j["S_s_late"] = s.S_s_late;
  j["S_s_final"] = s.S_s_final;
  j["S_C"] = optional_number(s.S_C);
  j["S_page"] = s.S_page;
  j["page_within_validity"] = s.page_within_validity;
  j["ratio_page"] = optional_number(s.ratio_page);
  j["ratio_conjecture"] = optional_number(s.ratio_conjecture);
  j["B_size"] = s.B_size;
  j["B_total_length"] = s.B_total_length;
  nlohmann::ordered_json graph;
  graph["family"] = to_string(g.family());
  graph["num_nodes"] = g.num_nodes();
  graph["num_edges"] = g.num_edges();
  graph["seed"] = g.seed();
  graph["k"] = g.params().k;
  graph["p"] = g.params().p;
  graph["mean_degree"] = report.mean_degree;
  graph["min_degree"] = report.min_degree;
  graph["max_degree"] = report.max_degree;
  graph["hilbert_dimension"] = hilbert_dimension(g);
  j["graph"] = std::move(graph);
  return j.dump(2) + "\n";
}

}  // namespace cyclewalk
