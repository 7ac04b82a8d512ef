#include "cyclewalk/runner.hpp"

#include "cyclewalk/cycles.hpp"
#include "cyclewalk/evolution.hpp"
#include "cyclewalk/hilbert.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fs = std::filesystem;

namespace cyclewalk {

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

Graph make_graph(const GraphSource& source) {
  if (source.file) return load_graph(*source.file);
  switch (source.family) {
    case GraphFamily::WattsStrogatz:
      return generate_watts_strogatz(source.nodes, source.k, source.p, source.seed);
    case GraphFamily::ErdosRenyi:
      return generate_erdos_renyi(source.nodes, source.p, source.seed);
    case GraphFamily::Explicit:
      break;
  }
  throw std::invalid_argument("explicit graphs must be given as a file");
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base) {
  if (!j.is_object()) throw std::invalid_argument("run config must be a JSON object");
  if (j.contains("graph")) base.graph.file = j["graph"].get<std::string>();
  if (j.contains("family")) base.graph.family = parse_family(j["family"].get<std::string>());
  if (j.contains("nodes")) base.graph.nodes = j["nodes"].get<std::size_t>();
  if (j.contains("k")) base.graph.k = j["k"].get<int>();
  if (j.contains("p")) base.graph.p = j["p"].get<double>();
  if (j.contains("seed")) base.graph.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("t_max")) base.t_max = j["t_max"].get<std::size_t>();
  if (j.contains("measure_every")) base.measure_every = j["measure_every"].get<std::size_t>();
  if (j.contains("threads")) base.threads = j["threads"].get<int>();
  if (j.contains("out_dir")) base.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("emit")) {
    const auto& e = j["emit"];
    base.emit_timeseries = e.value("timeseries", base.emit_timeseries);
    base.emit_summary = e.value("summary", base.emit_summary);
    base.emit_positions = e.value("positions", base.emit_positions);
  }
  return base;
}

RunRecord simulate_graph(const Graph& g, std::size_t t_max, std::size_t measure_every,
                         int threads, std::ostream* log) {
  require_valid(g);
  if (g.num_nodes() > kMaxSimulationNodes) {
    throw std::invalid_argument("refusing to simulate " + std::to_string(g.num_nodes()) +
                                " nodes (limit " + std::to_string(kMaxSimulationNodes) + ")");
  }
  if (measure_every == 0) throw std::invalid_argument("measure_every must be >= 1");

  auto arcs = std::make_shared<const ArcTable>(g);
  QuantumWalk walk(arcs, threads);
  auto psi = initial_state(arcs);

  const auto start = std::chrono::steady_clock::now();
  ObservableHook hook = [&](const StateVector& state, std::size_t t) {
    auto row = measure(state, t);
    if (log) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      *log << "[" << to_string(g.family()) << " n=" << g.num_nodes() << "] t=" << t
           << " norm=" << format_double(row.norm) << " S_s=" << format_double(row.S_s)
           << " wall=" << elapsed.count() << "s\n";
    }
    return row;
  };
  auto record = evolve(walk, psi, {t_max, measure_every}, hook);
  summarize(record, g, t_max);
  return record;
}

std::vector<double> time_averaged_positions(const RunRecord& record, std::size_t t_from,
                                            std::size_t t_to) {
  std::vector<double> avg;
  std::size_t count = 0;
  for (const auto& row : record.rows) {
    if (row.t < t_from || row.t > t_to) continue;
    if (avg.empty()) avg.assign(row.positions.size(), 0.0);
    for (std::size_t x = 0; x < avg.size(); ++x) avg[x] += row.positions[x];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("no measurement rows in the averaging window");
  for (auto& p : avg) p /= static_cast<double>(count);
  return avg;
}

double time_averaged_spin(const RunRecord& record, std::size_t t_from, std::size_t t_to) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : record.rows) {
    if (row.t < t_from || row.t > t_to) continue;
    sum += row.sz_mean;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("no measurement rows in the averaging window");
  return sum / static_cast<double>(count);
}

SimulationResult run_simulation(const RunConfig& config, std::ostream* log) {
  if (config.t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (config.measure_every < 1) throw std::invalid_argument("measure_every must be >= 1");
  SimulationResult result{make_graph(config.graph), {}};
  const auto& g = result.graph;
  result.record = simulate_graph(g, config.t_max, config.measure_every, config.threads, log);

  ensure_dir(config.out_dir);
  save_graph(g, config.out_dir / "graph.json");
  if (config.emit_timeseries) {
    std::ostringstream csv;
    write_timeseries_csv(csv, result.record, g.num_nodes());
    write_file(config.out_dir / "timeseries.csv", csv.str());
  }
  if (config.emit_summary) {
    write_file(config.out_dir / "summary.json", summary_json(result.record, g));
  }
  if (config.emit_positions) {
    const auto late = time_averaged_positions(result.record, config.t_max / 2, config.t_max);
    const auto micro = microcanonical_distribution(g);
    std::ostringstream csv;
    csv << "node,degree,p_microcanonical,p_late\n";
    for (NodeId x = 0; x < g.num_nodes(); ++x) {
      csv << x << ',' << g.degree(x) << ',' << format_double(micro[x]) << ','
          << format_double(late[x]) << '\n';
    }
    write_file(config.out_dir / "positions.csv", csv.str());
  }
  return result;
}

SweepConfig sweep_config_from_json(const nlohmann::json& j, SweepConfig base) {
  if (!j.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
  if (j.contains("families")) {
    base.families.clear();
    for (const auto& f : j["families"]) base.families.push_back(parse_family(f.get<std::string>()));
  }
  if (j.contains("sizes")) base.sizes = j["sizes"].get<std::vector<std::size_t>>();
  if (j.contains("seeds")) base.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  if (j.contains("ws_k")) base.ws_k = j["ws_k"].get<int>();
  if (j.contains("ws_p")) base.ws_p = j["ws_p"].get<double>();
  if (j.contains("er_p")) base.er_p = j["er_p"].get<double>();
  if (j.contains("t_max")) base.t_max = j["t_max"].get<std::size_t>();
  if (j.contains("measure_every")) base.measure_every = j["measure_every"].get<std::size_t>();
  if (j.contains("workers")) base.workers = j["workers"].get<int>();
  if (j.contains("out_dir")) base.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("write_runs")) base.write_runs = j["write_runs"].get<bool>();
  return base;
}

namespace {

struct SweepJob {
  GraphFamily family;
  std::size_t nodes;
  std::uint64_t seed;
};

SweepRow run_sweep_job(const SweepConfig& config, const SweepJob& job, std::ostream* log,
                       std::mutex& log_mutex) {
  SweepRow row;
  row.family = to_string(job.family);
  row.nodes = job.nodes;
  row.seed = job.seed;
  try {
    GraphSource source;
    source.family = job.family;
    source.nodes = job.nodes;
    source.seed = job.seed;
    source.k = config.ws_k;
    source.p = job.family == GraphFamily::WattsStrogatz ? config.ws_p : config.er_p;
    const auto g = make_graph(source);
    row.edges = g.num_edges();

    std::ostringstream run_log;
    const auto record = simulate_graph(g, config.t_max, config.measure_every, 1,
                                       log ? &run_log : nullptr);
    const auto& s = record.summary;
    row.B_size = s.B_size;
    row.B_total_length = s.B_total_length;
    row.S_C = s.S_C.value_or(0.0);
    row.S_s_late = s.S_s_late;
    row.S_s_final = s.S_s_final;
    row.S_page = s.S_page;
    row.ratio_page = s.ratio_page.value_or(0.0);
    row.ratio_conjecture = s.ratio_conjecture.value_or(0.0);
    if (!s.S_C) throw std::runtime_error("acyclic graph: cycle entropy undefined");
    row.rel_dev = std::abs(s.S_s_late - *s.S_C) / *s.S_C;

    if (config.write_runs) {
      const auto dir = config.out_dir / "runs" /
                       (row.family + "_n" + std::to_string(job.nodes) + "_s" +
                        std::to_string(job.seed));
      ensure_dir(dir);
      save_graph(g, dir / "graph.json");
      std::ostringstream csv;
      write_timeseries_csv(csv, record, g.num_nodes());
      write_file(dir / "timeseries.csv", csv.str());
      write_file(dir / "summary.json", summary_json(record, g));
    }
    if (log) {
      std::lock_guard lock(log_mutex);
      *log << "[sweep] " << row.family << " n=" << job.nodes << " seed=" << job.seed
           << " |E|=" << row.edges << " S_s_late=" << format_double(row.S_s_late)
           << " S_C=" << format_double(row.S_C) << '\n';
    }
  } catch (const std::exception& e) {
    row.status = csv_safe(std::string("error: ") + e.what());
    if (log) {
      std::lock_guard lock(log_mutex);
      *log << "[sweep] " << row.family << " n=" << job.nodes << " seed=" << job.seed
           << " failed: " << e.what() << '\n';
    }
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config, std::ostream* log) {
  if (config.families.empty() || config.sizes.empty() || config.seeds.empty()) {
    throw std::invalid_argument("sweep needs at least one family, size and seed");
  }
  auto families = config.families;
  auto sizes = config.sizes;
  auto seeds = config.seeds;
  std::sort(families.begin(), families.end());
  std::sort(sizes.begin(), sizes.end());
  std::sort(seeds.begin(), seeds.end());

  std::vector<SweepJob> jobs;
  for (auto f : families) {
    for (auto n : sizes) {
      for (auto s : seeds) jobs.push_back({f, n, s});
    }
  }

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      rows[i] = run_sweep_job(config, jobs[i], log, log_mutex);
    }
  };
  const auto workers = static_cast<std::size_t>(
      std::max(1, config.workers > 0 ? config.workers
                                     : static_cast<int>(std::thread::hardware_concurrency())));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < std::min(workers, jobs.size()); ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "family,nodes,seed,edges,B_size,B_total_length,S_C,S_s_late,S_s_final,S_page,"
         "ratio_page,ratio_conjecture,rel_dev,status\n";
  for (const auto& r : rows) {
    out << r.family << ',' << r.nodes << ',' << r.seed << ',' << r.edges << ',' << r.B_size << ','
        << r.B_total_length << ',' << format_double(r.S_C) << ',' << format_double(r.S_s_late)
        << ',' << format_double(r.S_s_final) << ',' << format_double(r.S_page) << ','
        << format_double(r.ratio_page) << ',' << format_double(r.ratio_conjecture) << ','
        << format_double(r.rel_dev) << ',' << csv_safe(r.status) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("family,nodes,seed", 0) != 0) {
    throw std::runtime_error("not a sweep CSV (missing header)");
  }
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 14) {
      throw std::runtime_error("sweep CSV line " + std::to_string(line_no) + ": expected 14 fields");
    }
    try {
      SweepRow r;
      r.family = f[0];
      r.nodes = std::stoul(f[1]);
      r.seed = std::stoull(f[2]);
      r.edges = std::stoul(f[3]);
      r.B_size = std::stoul(f[4]);
      r.B_total_length = std::stoul(f[5]);
      r.S_C = std::stod(f[6]);
      r.S_s_late = std::stod(f[7]);
      r.S_s_final = std::stod(f[8]);
      r.S_page = std::stod(f[9]);
      r.ratio_page = std::stod(f[10]);
      r.ratio_conjecture = std::stod(f[11]);
      r.rel_dev = std::stod(f[12]);
      r.status = f[13];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error("sweep CSV line " + std::to_string(line_no) + ": bad number");
    }
  }
  return rows;
}

SweepStats sweep_stats(const std::vector<SweepRow>& rows) {
  SweepStats st;
  st.rows = rows.size();
  double sum_dev = 0.0;
  double sum_page = 0.0;
  std::size_t within = 0;
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    ++st.ok_rows;
    sum_dev += r.rel_dev;
    sum_page += r.ratio_page;
    if (r.rel_dev <= 0.02) ++within;
    if (!st.worst || r.rel_dev > st.worst->rel_dev) st.worst = r;
    if (st.ok_rows == 1) {
      st.min_ratio_page = st.max_ratio_page = r.ratio_page;
    } else {
      st.min_ratio_page = std::min(st.min_ratio_page, r.ratio_page);
      st.max_ratio_page = std::max(st.max_ratio_page, r.ratio_page);
    }
  }
  if (st.ok_rows > 0) {
    const auto n = static_cast<double>(st.ok_rows);
    st.mean_rel_dev = sum_dev / n;
    st.max_rel_dev = st.worst->rel_dev;
    st.fraction_within_2pct = static_cast<double>(within) / n;
    st.mean_ratio_page = sum_page / n;
  }
  return st;
}

void print_sweep_stats(std::ostream& out, const SweepStats& st) {
  out << "rows: " << st.rows << " (ok " << st.ok_rows << ")\n";
  if (st.ok_rows == 0) return;
  out << "mean |S_s_late - S_C| / S_C: " << format_double(st.mean_rel_dev) << '\n'
      << "max  |S_s_late - S_C| / S_C: " << format_double(st.max_rel_dev) << '\n'
      << "rows within 2%: " << format_double(st.fraction_within_2pct) << '\n'
      << "S_s_late / S_page: mean " << format_double(st.mean_ratio_page) << ", min "
      << format_double(st.min_ratio_page) << ", max " << format_double(st.max_ratio_page) << '\n';
  const auto& w = *st.worst;
  out << "worst row: " << w.family << " n=" << w.nodes << " seed=" << w.seed << " |E|=" << w.edges
      << " S_s_late=" << format_double(w.S_s_late) << " S_C=" << format_double(w.S_C)
      << " rel_dev=" << format_double(w.rel_dev) << '\n';
}

}  // namespace cyclewalk
