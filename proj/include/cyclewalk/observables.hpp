// observables.hpp - position and spin statistics, reduced density matrices,
// entropies and the run record that collects them over time.
#pragma once

#include "cyclewalk/hilbert.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cyclewalk {

enum class Subsystem { Position, Color, Particle, Spin };

struct DensityMatrix {
  Eigen::MatrixXcd matrix;
  Subsystem label = Subsystem::Particle;

  Eigen::Index dim() const { return matrix.rows(); }
};

std::vector<double> position_distribution(const StateVector& psi);
// d_x / 2|E| per node.
std::vector<double> microcanonical_distribution(const Graph& g);
double total_variation_distance(const std::vector<double>& p, const std::vector<double>& q);

// Per-node mean of sigma_z: 1 for all spins up, 0 when paramagnetic.
double mean_spin_z(const StateVector& psi);

// G[a, a'] = sum_s psi(a, s) conj(psi(a', s)); the walker (position and color)
// reduced density matrix. Its nonzero spectrum equals that of the spin
// reduced density matrix.
DensityMatrix particle_gram(const StateVector& psi);

// Position and color reductions. Colors share a space padded to the maximum
// degree; terms exist only where both colors exist at a node.
DensityMatrix reduced_density_position(const StateVector& psi);
DensityMatrix reduced_density_position(const ArcTable& arcs, const DensityMatrix& gram);
DensityMatrix reduced_density_color(const StateVector& psi);
DensityMatrix reduced_density_color(const ArcTable& arcs, const DensityMatrix& gram);

// Full 2^|V| x 2^|V| spin reduction, for small graphs only (|V| <= 12).
DensityMatrix reduced_density_spin(const StateVector& psi);

inline constexpr double kEigenvalueClamp = 1e-14;

// -Tr rho log2 rho. Throws std::invalid_argument when rho is not Hermitian
// (1e-10), has an eigenvalue below -1e-10, or its trace differs from 1 by
// more than 1e-8.
double von_neumann_entropy(const DensityMatrix& rho);

struct PageEntropy {
  double bits = 0.0;
  // D_A >= 1 and D_A^2 <= D; outside this the value is only indicative.
  bool within_validity = false;
};
PageEntropy page_entropy(std::size_t subsystem_dim, std::size_t total_dim);

struct MeasurementRow {
  std::size_t t = 0;
  double S_x = 0.0;
  double S_c = 0.0;
  double S_s = 0.0;
  double sz_mean = 0.0;
  double norm = 0.0;
  std::vector<double> positions;
};

// Evaluates every observable on psi and checks the entropy bounds and the
// probability normalisation (std::runtime_error on violation).
MeasurementRow measure(const StateVector& psi, std::size_t t);

struct RunSummary {
  double S_s_late = 0.0;   // mean S_s over rows with t > 3/4 t_max
  double S_s_final = 0.0;  // S_s in the last row
  std::optional<double> S_C;
  double S_page = 0.0;
  bool page_within_validity = false;
  std::optional<double> ratio_page;
  std::optional<double> ratio_conjecture;
  std::size_t B_size = 0;
  std::size_t B_total_length = 0;
};

struct RunRecord {
  std::vector<MeasurementRow> rows;
  RunSummary summary;
};

// Late-time average: rows with t > 3 t_max / 4, or the last row if none.
double late_time_mean_spin_entropy(const std::vector<MeasurementRow>& rows, std::size_t t_max);

// Fills the summary of `record` from its rows and the graph's cycle basis.
void summarize(RunRecord& record, const Graph& g, std::size_t t_max);

// CSV header: t,S_x,S_c,S_s,sz_mean,p_0,...,p_{n-1}
void write_timeseries_csv(std::ostream& out, const RunRecord& record, std::size_t num_nodes);
std::string summary_json(const RunRecord& record, const Graph& g);

// Shortest decimal that round-trips; used for every number written to disk.
std::string format_double(double v);

}  // namespace cyclewalk
