// cyclewalk - command-line front end.
//
//   cyclewalk graph    --family ws --nodes 15 --k 4 --p 0.35 --seed 7 -o g.json
//   cyclewalk mcb      g.json
//   cyclewalk simulate --graph g.json --t-max 400 --out-dir run/
//   cyclewalk sweep    --out-dir sweep/ --workers 4
//   cyclewalk compare  sweep/sweep.csv
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error. Progress goes to
// stderr; data goes to files or stdout.

#include "cyclewalk/cycles.hpp"
#include "cyclewalk/graph.hpp"
#include "cyclewalk/hilbert.hpp"
#include "cyclewalk/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace cyclewalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed config file " + path.string() + ": " + e.what());
  }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  // "6..15" or "6,8,10"
  std::vector<std::size_t> sizes;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = std::stoul(text.substr(0, dots));
    const auto hi = std::stoul(text.substr(dots + 2));
    if (lo > hi) throw UsageError("empty size range " + text);
    for (auto n = lo; n <= hi; ++n) sizes.push_back(n);
    return sizes;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) sizes.push_back(std::stoul(item));
  if (sizes.empty()) throw UsageError("no sizes given");
  return sizes;
}

struct GraphFlags {
  std::string family = "er";
  std::size_t nodes = 12;
  int k = 4;
  double p = 0.35;
  std::uint64_t seed = 1;
  CLI::Option* family_opt = nullptr;
  CLI::Option* nodes_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* p_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void add_to(CLI::App& app) {
    family_opt = app.add_option("--family", family, "ws | er")->check(CLI::IsMember({"ws", "er"}));
    nodes_opt = app.add_option("--nodes", nodes, "number of nodes");
    k_opt = app.add_option("--k", k, "Watts-Strogatz mean degree (even)");
    p_opt = app.add_option("--p", p, "rewiring probability (ws) or edge probability (er)");
    seed_opt = app.add_option("--seed", seed, "generator seed");
  }

  void apply(GraphSource& src) const {
    if (family_opt->count()) src.family = parse_family(family);
    if (nodes_opt->count()) src.nodes = nodes;
    if (k_opt->count()) src.k = k;
    if (p_opt->count()) src.p = p;
    if (seed_opt->count()) src.seed = seed;
  }
};

void check_generation_params(const GraphSource& src) {
  if (src.family == GraphFamily::WattsStrogatz) {
    if (src.k < 2 || src.k % 2 != 0) throw UsageError("--k must be even and >= 2");
    if (src.nodes <= static_cast<std::size_t>(src.k)) throw UsageError("--nodes must exceed --k");
    if (src.p < 0.0 || src.p > 1.0) throw UsageError("--p must lie in [0, 1]");
  } else {
    if (src.nodes < 3) throw UsageError("--nodes must be at least 3");
    if (src.p <= 0.0 || src.p > 1.0) throw UsageError("--p must lie in (0, 1]");
  }
}

int cmd_graph(const GraphFlags& flags, const fs::path& output) {
  GraphSource src;
  src.family = GraphFamily::ErdosRenyi;
  flags.apply(src);
  check_generation_params(src);
  const auto g = make_graph(src);
  const auto report = validate(g);
  if (!output.parent_path().empty()) fs::create_directories(output.parent_path());
  save_graph(g, output);
  std::cout << "wrote " << output.string() << '\n'
            << "family: " << to_string(g.family()) << "  nodes: " << g.num_nodes()
            << "  edges: " << g.num_edges() << '\n'
            << "degree min/mean/max: " << report.min_degree << " / " << report.mean_degree
            << " / " << report.max_degree << '\n'
            << "cycle space dimension |B|: " << cycle_space_dimension(g) << '\n'
            << "hilbert dimension: " << hilbert_dimension(g) << '\n'
            << "valid: " << (report.ok ? "yes" : "no") << '\n';
  return kExitOk;
}

int cmd_mcb(const fs::path& file) {
  const auto g = load_graph(file, GraphCheck::SimpleOnly);
  const auto basis = minimum_cycle_basis(g);  // throws when disconnected
  nlohmann::ordered_json j;
  j["dimension"] = basis.size();
  j["total_length"] = basis.total_length;
  j["S_C"] = basis.size() > 0 ? nlohmann::ordered_json(conjectured_entropy(basis))
                              : nlohmann::ordered_json(nullptr);
  auto cycles = nlohmann::ordered_json::array();
  for (const auto& c : basis.cycles) cycles.push_back(c.edge_ids());
  j["cycles"] = std::move(cycles);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interacting quantum walk on random graphs and minimum cycle bases"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress output");

  auto* graph_cmd = app.add_subcommand("graph", "generate and save a random graph");
  GraphFlags graph_flags;
  graph_flags.add_to(*graph_cmd);
  fs::path graph_output = "graph.json";
  graph_cmd->add_option("-o,--output", graph_output, "output file");

  auto* mcb_cmd = app.add_subcommand("mcb", "minimum cycle basis of a graph file");
  fs::path mcb_file;
  mcb_cmd->add_option("graph", mcb_file, "graph JSON file")->required();

  auto* sim_cmd = app.add_subcommand("simulate", "run the walk on one graph");
  GraphFlags sim_flags;
  sim_flags.add_to(*sim_cmd);
  std::string sim_graph_file;
  std::size_t sim_t_max = 400, sim_every = 10;
  int sim_threads = 0;
  std::string sim_out = "out", sim_config;
  bool no_timeseries = false, no_summary = false, no_positions = false;
  auto* sim_graph_opt = sim_cmd->add_option("--graph", sim_graph_file, "graph JSON file");
  auto* sim_tmax_opt = sim_cmd->add_option("--t-max", sim_t_max, "number of steps");
  auto* sim_every_opt = sim_cmd->add_option("--measure-every", sim_every, "measurement interval");
  auto* sim_threads_opt = sim_cmd->add_option("--threads", sim_threads, "worker threads (0: all)");
  auto* sim_out_opt = sim_cmd->add_option("--out-dir", sim_out, "output directory");
  sim_cmd->add_option("--config", sim_config, "JSON run config (flags override it)");
  sim_cmd->add_flag("--no-timeseries", no_timeseries);
  sim_cmd->add_flag("--no-summary", no_summary);
  sim_cmd->add_flag("--no-positions", no_positions);

  auto* sweep_cmd = app.add_subcommand("sweep", "ensemble of graphs, one CSV row per run");
  std::string sweep_families = "ws,er", sweep_sizes = "6..15", sweep_out = "sweep", sweep_config;
  std::vector<std::uint64_t> sweep_seeds;
  std::size_t sweep_t_max = 400, sweep_every = 10;
  int sweep_workers = 0, ws_k = 4;
  double ws_p = 0.35, er_p = 0.35;
  bool write_runs = false;
  auto* fam_opt = sweep_cmd->add_option("--families", sweep_families, "comma list of ws,er");
  auto* sizes_opt = sweep_cmd->add_option("--sizes", sweep_sizes, "e.g. 6..15 or 6,8,10");
  auto* seeds_opt = sweep_cmd->add_option("--seed,--seeds", sweep_seeds, "graph seeds");
  auto* sw_tmax_opt = sweep_cmd->add_option("--t-max", sweep_t_max, "number of steps");
  auto* sw_every_opt = sweep_cmd->add_option("--measure-every", sweep_every, "measurement interval");
  auto* workers_opt =
      sweep_cmd->add_option("--workers,--threads", sweep_workers, "concurrent runs (0: all cores)");
  auto* sw_out_opt = sweep_cmd->add_option("--out-dir", sweep_out, "output directory");
  auto* wsk_opt = sweep_cmd->add_option("--ws-k", ws_k, "Watts-Strogatz mean degree");
  auto* wsp_opt = sweep_cmd->add_option("--ws-p", ws_p, "Watts-Strogatz rewiring probability");
  auto* erp_opt = sweep_cmd->add_option("--er-p", er_p, "Erdos-Renyi edge probability");
  auto* runs_opt = sweep_cmd->add_flag("--write-runs", write_runs, "keep per-run files");
  sweep_cmd->add_option("--config", sweep_config, "JSON sweep config (flags override it)");

  auto* cmp_cmd = app.add_subcommand("compare", "statistics of a sweep CSV");
  fs::path cmp_file;
  cmp_cmd->add_option("csv", cmp_file, "sweep CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::ostream* log = quiet ? nullptr : &std::cerr;
  try {
    if (*graph_cmd) return cmd_graph(graph_flags, graph_output);
    if (*mcb_cmd) return cmd_mcb(mcb_file);

    if (*sim_cmd) {
      RunConfig config;
      if (!sim_config.empty()) config = run_config_from_json(read_json_file(sim_config), config);
      sim_flags.apply(config.graph);
      if (sim_graph_opt->count()) config.graph.file = sim_graph_file;
      if (sim_tmax_opt->count()) config.t_max = sim_t_max;
      if (sim_every_opt->count()) config.measure_every = sim_every;
      if (sim_threads_opt->count()) config.threads = sim_threads;
      if (sim_out_opt->count()) config.out_dir = sim_out;
      if (no_timeseries) config.emit_timeseries = false;
      if (no_summary) config.emit_summary = false;
      if (no_positions) config.emit_positions = false;
      if (config.t_max < 1 || config.measure_every < 1) {
        throw UsageError("--t-max and --measure-every must be >= 1");
      }
      if (!config.graph.file) check_generation_params(config.graph);
      const auto result = run_simulation(config, log);
      std::cout << summary_json(result.record, result.graph);
      return kExitOk;
    }

    if (*sweep_cmd) {
      SweepConfig config;
      if (!sweep_config.empty()) config = sweep_config_from_json(read_json_file(sweep_config), config);
      if (fam_opt->count()) {
        config.families.clear();
        std::stringstream ss(sweep_families);
        for (std::string f; std::getline(ss, f, ',');) config.families.push_back(parse_family(f));
      }
      if (sizes_opt->count()) config.sizes = parse_sizes(sweep_sizes);
      if (seeds_opt->count()) config.seeds = sweep_seeds;
      if (sw_tmax_opt->count()) config.t_max = sweep_t_max;
      if (sw_every_opt->count()) config.measure_every = sweep_every;
      if (workers_opt->count()) config.workers = sweep_workers;
      if (sw_out_opt->count()) config.out_dir = sweep_out;
      if (wsk_opt->count()) config.ws_k = ws_k;
      if (wsp_opt->count()) config.ws_p = ws_p;
      if (erp_opt->count()) config.er_p = er_p;
      if (runs_opt->count()) config.write_runs = true;

      const auto rows = run_sweep(config, log);
      fs::create_directories(config.out_dir);
      const auto csv_path = config.out_dir / "sweep.csv";
      std::ofstream out(csv_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + csv_path.string());
      write_sweep_csv(out, rows);
      out.close();
      std::cout << "wrote " << csv_path.string() << '\n';
      print_sweep_stats(std::cout, sweep_stats(rows));
      return kExitOk;
    }

    if (*cmp_cmd) {
      std::ifstream in(cmp_file);
      if (!in) throw std::runtime_error("cannot read " + cmp_file.string());
      print_sweep_stats(std::cout, sweep_stats(read_sweep_csv(in)));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
