// runner.hpp - single simulations, ensemble sweeps and their output files.
#pragma once

#include "cyclewalk/graph.hpp"
#include "cyclewalk/observables.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cyclewalk {

// Either a saved graph file or generation parameters.
struct GraphSource {
  std::optional<std::filesystem::path> file;
  GraphFamily family = GraphFamily::ErdosRenyi;
  std::size_t nodes = 12;
  int k = 4;
  double p = 0.35;
  std::uint64_t seed = 1;
};

Graph make_graph(const GraphSource& source);

// Simulations above this many nodes are refused (memory).
inline constexpr std::size_t kMaxSimulationNodes = 20;

struct RunConfig {
  GraphSource graph;
  std::size_t t_max = 400;
  std::size_t measure_every = 10;
  int threads = 0;  // 0: hardware concurrency
  std::filesystem::path out_dir = "out";
  bool emit_timeseries = true;
  bool emit_summary = true;
  bool emit_positions = true;
};

// Overlays the keys present in `j` onto `base`. Keys: graph, family, nodes,
// k, p, seed, t_max, measure_every, threads, out_dir, emit{timeseries,
// summary, positions}.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

struct SimulationResult {
  Graph graph;
  RunRecord record;
};

// Runs the walk from the initial state and writes, as enabled, graph.json,
// timeseries.csv, summary.json and positions.csv under out_dir. Progress goes
// to `log` when non-null.
SimulationResult run_simulation(const RunConfig& config, std::ostream* log = nullptr);

// Simulation without files: returns the record with its summary filled.
RunRecord simulate_graph(const Graph& g, std::size_t t_max, std::size_t measure_every,
                         int threads, std::ostream* log = nullptr);

// Mean occupation per node over rows with t_from <= t <= t_to.
std::vector<double> time_averaged_positions(const RunRecord& record, std::size_t t_from,
                                            std::size_t t_to);
double time_averaged_spin(const RunRecord& record, std::size_t t_from, std::size_t t_to);

struct SweepConfig {
  std::vector<GraphFamily> families = {GraphFamily::WattsStrogatz, GraphFamily::ErdosRenyi};
  std::vector<std::size_t> sizes = {6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  std::vector<std::uint64_t> seeds = {1};
  int ws_k = 4;
  double ws_p = 0.35;
  double er_p = 0.35;
  std::size_t t_max = 400;
  std::size_t measure_every = 10;
  int workers = 1;
  std::filesystem::path out_dir = "sweep";
  bool write_runs = false;  // per-run files under out_dir/runs/
};

SweepConfig sweep_config_from_json(const nlohmann::json& j, SweepConfig base = {});

struct SweepRow {
  std::string family;
  std::size_t nodes = 0;
  std::uint64_t seed = 0;
  std::size_t edges = 0;
  std::size_t B_size = 0;
  std::size_t B_total_length = 0;
  double S_C = 0.0;
  double S_s_late = 0.0;
  double S_s_final = 0.0;
  double S_page = 0.0;
  double ratio_page = 0.0;
  double ratio_conjecture = 0.0;
  double rel_dev = 0.0;  // |S_s_late - S_C| / S_C
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

// One row per (family, size, seed), ordered by family, then size, then seed.
// A failing run is recorded in its row's status and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepConfig& config, std::ostream* log = nullptr);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct SweepStats {
  std::size_t rows = 0;
  std::size_t ok_rows = 0;
  double mean_rel_dev = 0.0;
  double max_rel_dev = 0.0;
  double fraction_within_2pct = 0.0;
  double mean_ratio_page = 0.0;
  double min_ratio_page = 0.0;
  double max_ratio_page = 0.0;
  std::optional<SweepRow> worst;
};

SweepStats sweep_stats(const std::vector<SweepRow>& rows);
void print_sweep_stats(std::ostream& out, const SweepStats& stats);

}  // namespace cyclewalk
