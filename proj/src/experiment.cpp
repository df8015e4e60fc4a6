#include "treegroom/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "treegroom/evolution.hpp"
#include "treegroom/solution_io.hpp"
#include "treegroom/verify.hpp"

namespace treegroom {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<int> int_list(const json& j, const char* field) {
  if (!j.is_array()) throw ConfigError(std::string("'") + field + "' must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + field + "' must contain integers");
    out.push_back(v.get<int>());
  }
  return out;
}

template <class T>
T field_or(const json& j, const char* name, T fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + name + "': " + e.what());
  }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError("unknown field '" + key + "' in " + where);
    }
  }
}

std::string optional_text(const std::optional<long long>& v) { return v ? std::to_string(*v) : std::string(); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct InstanceKey {
  TopologyKind topology;
  int n;
  int patterns;
  int granularity;
  auto operator<=>(const InstanceKey&) const = default;
};

struct Prepared {
  std::unique_ptr<GroomingContext> context;
  BoundsReport bounds;
};

struct RunOutput {
  ResultRow row;
  std::vector<GenerationRecord> history;
  std::vector<std::string> warnings;
  std::string error;
};

struct BestSlot {
  std::mutex lock;
  bool set = false;
  Tally best;
  int run = 0;
  json solution;
};

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig c;
  c.grids.push_back({TopologyKind::complete_binary, {7, 9, 11, 13, 15}, {2, 8}, {16, 24}});
  c.grids.push_back({TopologyKind::complete_binary, {15}, {2}, {16, 24, 48, 96}});
  c.grids.push_back({TopologyKind::star, {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}, {2}, {16, 24}});
  c.grids.push_back({TopologyKind::star, {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}, {4}, {24}});
  return c;
}

void ExperimentConfig::use_paper_scale() {
  ga.mu = 200;
  ga.lambda_offspring = 200;
  ga.generations = 500;
}

void ExperimentConfig::validate() const {
  if (grids.empty()) throw ConfigError("config has no grids");
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const GridSpec& grid = grids[i];
    const std::string where = "grid " + std::to_string(i);
    if (grid.n.empty() || grid.patterns.empty() || grid.granularity.empty() || grid.modes.empty()) {
      throw ConfigError(where + " has an empty n, M, g or modes list");
    }
    for (int n : grid.n) {
      if (n < 2) throw ConfigError(where + ": n must be at least 2, got " + std::to_string(n));
    }
    for (int m : grid.patterns) {
      if (m < 1) throw ConfigError(where + ": M must be at least 1, got " + std::to_string(m));
    }
    for (int g : grid.granularity) {
      if (g < demand_range.high) {
        throw ConfigError(where + ": g=" + std::to_string(g) + " is below the demand range maximum " +
                          std::to_string(demand_range.high));
      }
    }
    if (grid.topology == TopologyKind::parent_vector) {
      throw ConfigError(where + ": sweeps support star and complete_binary topologies");
    }
  }
  if (demand_range.low < 0 || demand_range.low > demand_range.high) {
    throw ConfigError("demand_range must satisfy 0 <= low <= high");
  }
  if (runs_per_cell < 1) throw ConfigError("runs_per_cell must be at least 1");
  if (ga.max_parts < 1) throw ConfigError("max_parts must be at least 1");
  if (threads < 0) throw ConfigError("threads must be non-negative");
  GaParams probe;
  probe.mu = ga.mu;
  probe.lambda_offspring = ga.lambda_offspring;
  probe.pc = ga.pc;
  probe.pm = ga.pm;
  probe.generations = ga.generations;
  try {
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const ExperimentConfig& config) {
  json grids = json::array();
  for (const auto& grid : config.grids) {
    json modes = json::array();
    for (SplitMode m : grid.modes) modes.push_back(to_string(m));
    grids.push_back({{"topology", to_string(grid.topology)},
                     {"n", grid.n},
                     {"M", grid.patterns},
                     {"g", grid.granularity},
                     {"modes", modes}});
  }
  return {{"grids", grids},
          {"ga",
           {{"mu", config.ga.mu},
            {"lambda", config.ga.lambda_offspring},
            {"pc", config.ga.pc},
            {"pm", config.ga.pm},
            {"generations", config.ga.generations},
            {"max_parts", config.ga.max_parts}}},
          {"runs_per_cell", config.runs_per_cell},
          {"seed", config.base_seed},
          {"demand_range", {config.demand_range.low, config.demand_range.high}},
          {"output_dir", config.output_dir},
          {"threads", config.threads},
          {"record_wall_time", config.record_wall_time},
          {"write_histories", config.write_histories},
          {"write_solutions", config.write_solutions}};
}

ExperimentConfig config_from_json(const json& j, const ExperimentConfig& base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(j,
             {"grids", "ga", "runs_per_cell", "seed", "demand_range", "output_dir", "threads", "record_wall_time",
              "write_histories", "write_solutions"},
             "config");
  ExperimentConfig c = base;
  if (j.contains("grids")) {
    if (!j["grids"].is_array()) throw ConfigError("'grids' must be an array");
    c.grids.clear();
    for (const auto& g : j["grids"]) {
      if (!g.is_object()) throw ConfigError("each grid must be an object");
      check_keys(g, {"topology", "n", "M", "g", "modes"}, "grid");
      GridSpec spec;
      try {
        spec.topology = topology_kind_from_string(field_or<std::string>(g, "topology", "complete_binary"));
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      if (!g.contains("n") || !g.contains("M") || !g.contains("g")) {
        throw ConfigError("each grid needs 'n', 'M' and 'g' lists");
      }
      spec.n = int_list(g["n"], "n");
      spec.patterns = int_list(g["M"], "M");
      spec.granularity = int_list(g["g"], "g");
      if (g.contains("modes")) {
        spec.modes.clear();
        for (const auto& m : g["modes"]) {
          try {
            spec.modes.push_back(split_mode_from_string(m.get<std::string>()));
          } catch (const std::exception& e) {
            throw ConfigError(e.what());
          }
        }
      }
      c.grids.push_back(std::move(spec));
    }
  }
  if (j.contains("ga")) {
    const json& ga = j["ga"];
    if (!ga.is_object()) throw ConfigError("'ga' must be an object");
    check_keys(ga, {"mu", "lambda", "pc", "pm", "generations", "max_parts"}, "ga");
    c.ga.mu = field_or(ga, "mu", c.ga.mu);
    c.ga.lambda_offspring = field_or(ga, "lambda", c.ga.lambda_offspring);
    c.ga.pc = field_or(ga, "pc", c.ga.pc);
    c.ga.pm = field_or(ga, "pm", c.ga.pm);
    c.ga.generations = field_or(ga, "generations", c.ga.generations);
    c.ga.max_parts = field_or(ga, "max_parts", c.ga.max_parts);
  }
  c.runs_per_cell = field_or(j, "runs_per_cell", c.runs_per_cell);
  c.base_seed = field_or(j, "seed", c.base_seed);
  if (j.contains("demand_range")) {
    const auto r = int_list(j["demand_range"], "demand_range");
    if (r.size() != 2) throw ConfigError("'demand_range' must be [low, high]");
    c.demand_range = {r[0], r[1]};
  }
  c.output_dir = field_or(j, "output_dir", c.output_dir);
  c.threads = field_or(j, "threads", c.threads);
  c.record_wall_time = field_or(j, "record_wall_time", c.record_wall_time);
  c.write_histories = field_or(j, "write_histories", c.write_histories);
  c.write_solutions = field_or(j, "write_solutions", c.write_solutions);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j, base);
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* raw = std::getenv(kSeedEnvVar);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used, 10);
    if (used != std::string(raw).size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError(std::string(kSeedEnvVar) + " is not an unsigned integer: '" + raw + "'");
  }
}

std::string Cell::key() const {
  return to_string(topology) + "_n" + std::to_string(n) + "_M" + std::to_string(patterns) + "_g" +
         std::to_string(granularity) + "_" + to_string(mode);
}

std::vector<Cell> expand_cells(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (const auto& grid : config.grids) {
    for (int n : grid.n) {
      for (int m : grid.patterns) {
        for (int g : grid.granularity) {
          for (SplitMode mode : grid.modes) {
            Cell cell{grid.topology, n, m, g, mode};
            if (std::find(cells.begin(), cells.end(), cell) == cells.end()) cells.push_back(cell);
          }
        }
      }
    }
  }
  return cells;
}

std::uint64_t instance_seed(std::uint64_t base_seed, int n) {
  return mix_seed(base_seed, static_cast<std::uint64_t>(n));
}

std::uint64_t run_seed(std::uint64_t base_seed, const Cell& cell, int run) {
  std::uint64_t h = mix_seed(base_seed, static_cast<std::uint64_t>(cell.topology) + 1);
  h = mix_seed(h, static_cast<std::uint64_t>(cell.n));
  h = mix_seed(h, static_cast<std::uint64_t>(cell.patterns));
  h = mix_seed(h, static_cast<std::uint64_t>(cell.granularity));
  h = mix_seed(h, static_cast<std::uint64_t>(cell.mode) + 1);
  return mix_seed(h, static_cast<std::uint64_t>(run));
}

TrafficInstance cell_instance(const ExperimentConfig& config, const Cell& cell) {
  return generate_instance(cell.n, cell.patterns, cell.granularity, config.demand_range,
                           instance_seed(config.base_seed, cell.n));
}

SweepResult run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
  config.validate();
  auto log = [&](const std::string& line) {
    if (options.log) options.log(line);
  };
  const std::vector<Cell> cells = expand_cells(config);

  std::map<InstanceKey, Prepared> prepared;
  for (const Cell& cell : cells) {
    const InstanceKey key{cell.topology, cell.n, cell.patterns, cell.granularity};
    if (prepared.count(key)) continue;
    TrafficInstance instance = cell_instance(config, cell);
    TreeTopology topology = TreeTopology::build(cell.topology, cell.n);
    Prepared p;
    p.bounds = bounds_report(instance, topology);
    p.context = std::make_unique<GroomingContext>(std::move(topology), std::move(instance), config.ga.max_parts);
    prepared.emplace(key, std::move(p));
  }

  const int runs = config.runs_per_cell;
  const std::size_t tasks = cells.size() * static_cast<std::size_t>(runs);
  std::vector<RunOutput> outputs(tasks);
  std::vector<BestSlot> best(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::atomic<std::size_t> done{0};
  std::mutex log_lock;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      const std::size_t c = t / static_cast<std::size_t>(runs);
      const int run = static_cast<int>(t % static_cast<std::size_t>(runs));
      const Cell& cell = cells[c];
      const Prepared& p = prepared.at({cell.topology, cell.n, cell.patterns, cell.granularity});
      RunOutput& out = outputs[t];

      GaParams params;
      params.mu = config.ga.mu;
      params.lambda_offspring = config.ga.lambda_offspring;
      params.pc = config.ga.pc;
      params.pm = config.ga.pm;
      params.generations = config.ga.generations;
      params.mode = cell.mode;
      params.seed = run_seed(config.base_seed, cell, run);

      const auto start = std::chrono::steady_clock::now();
      EvolutionResult evo = evolve(*p.context, params);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      SolutionRecord record = to_record(evo.best, *p.context);
      const ValidationReport report = validate(record, p.context->instance(), p.context->topology());
      if (!report.passed()) {
        out.error = "cell " + cell.key() + " run " + std::to_string(run) + " failed validation: " + report.summary();
        failed.store(true);
        return;
      }

      out.row = {cell,         run,          params.seed,  evo.best.tally.adms, evo.best.tally.wavelengths,
                 p.bounds.w_min, p.bounds.m_min, p.bounds.w_max, p.bounds.m_max,     params.generations,
                 seconds};
      out.history = std::move(evo.history);
      out.warnings = std::move(evo.warnings);

      if (config.write_solutions && options.write_files) {
        BestSlot& slot = best[c];
        std::lock_guard guard(slot.lock);
        const auto cmp = compare_fitness(evo.best.tally, slot.best);
        if (!slot.set || cmp < 0 || (cmp == 0 && run < slot.run)) {
          slot.set = true;
          slot.best = evo.best.tally;
          slot.run = run;
          slot.solution = to_json(record);
        }
      }

      const std::size_t finished = done.fetch_add(1) + 1;
      std::lock_guard guard(log_lock);
      std::ostringstream line;
      line << "[" << finished << "/" << tasks << "] " << cell.key() << " run " << run << ": " << out.row.best_adms
           << " ADMs, " << out.row.best_wavelengths << " wavelengths";
      log(line.str());
    }
  };

  int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(tasks, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& out : outputs) {
    if (!out.error.empty()) throw SweepValidationError(out.error);
  }

  SweepResult result;
  std::set<std::string> seen_warnings;
  for (auto& out : outputs) {
    result.rows.push_back(out.row);
    for (auto& w : out.warnings) {
      const std::string line = out.row.cell.key() + ": " + w;
      if (seen_warnings.insert(line).second) result.warnings.push_back(line);
    }
  }
  result.summary = summarize(result.rows);

  if (options.write_files) {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    write_text(dir / "results.csv", results_csv(result.rows, config.record_wall_time));
    write_text(dir / "summary.csv", summary_csv(result.summary));
    write_text(dir / "timings.csv", timings_csv(result.rows));
    write_text(dir / "config.json", to_json(config).dump(2) + "\n");
    std::set<std::string> instances_written;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Cell& cell = cells[c];
      const std::string inst_name = "instance_n" + std::to_string(cell.n) + "_M" + std::to_string(cell.patterns) +
                                    "_g" + std::to_string(cell.granularity) + ".json";
      if (instances_written.insert(inst_name).second) {
        const auto& p = prepared.at({cell.topology, cell.n, cell.patterns, cell.granularity});
        save_instance(p.context->instance(), (dir / inst_name).string());
      }
      if (config.write_histories) {
        for (int run = 0; run < runs; ++run) {
          const RunOutput& out = outputs[c * static_cast<std::size_t>(runs) + static_cast<std::size_t>(run)];
          std::ostringstream csv;
          csv << "generation,best_adms,best_wavelengths,evals\n";
          for (const auto& h : out.history) {
            csv << h.generation << ',' << h.best.adms << ',' << h.best.wavelengths << ',' << h.evaluations << '\n';
          }
          write_text(dir / ("history_" + cell.key() + "_" + std::to_string(run) + ".csv"), csv.str());
        }
      }
      if (config.write_solutions && best[c].set) {
        write_text(dir / ("solution_" + cell.key() + ".json"), best[c].solution.dump(2) + "\n");
      }
    }
  }
  return result;
}

std::vector<CellSummary> summarize(const std::vector<ResultRow>& rows) {
  std::vector<CellSummary> out;
  for (const ResultRow& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const CellSummary& s) { return s.cell == row.cell; });
    const Tally t{row.best_adms, row.best_wavelengths};
    if (it == out.end()) {
      out.push_back({row.cell, 1, row.run, row.seed, t, row.w_min, row.m_min, row.w_max, row.m_max});
      continue;
    }
    ++it->runs;
    if (compare_fitness(t, it->best) < 0) {
      it->best = t;
      it->best_run = row.run;
      it->best_seed = row.seed;
    }
  }
  return out;
}

std::string results_csv(const std::vector<ResultRow>& rows, bool with_wall_time) {
  std::ostringstream csv;
  csv << "topology,n,M,g,mode,run,seed,best_adms,best_wavelengths,W_min,M_min,W_max,M_max,generations,wall_time\n";
  for (const ResultRow& r : rows) {
    csv << to_string(r.cell.topology) << ',' << r.cell.n << ',' << r.cell.patterns << ',' << r.cell.granularity << ','
        << to_string(r.cell.mode) << ',' << r.run << ',' << r.seed << ',' << r.best_adms << ',' << r.best_wavelengths
        << ',' << r.w_min << ',' << r.m_min << ',' << optional_text(r.w_max) << ',' << r.m_max << ','
        << r.generations << ',';
    if (with_wall_time) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", r.wall_time);
      csv << buf;
    }
    csv << '\n';
  }
  return csv.str();
}

std::string summary_csv(const std::vector<CellSummary>& summary) {
  std::ostringstream csv;
  csv << "topology,n,M,g,mode,runs,best_run,seed,best_adms,best_wavelengths,W_min,M_min,W_max,M_max\n";
  for (const CellSummary& s : summary) {
    csv << to_string(s.cell.topology) << ',' << s.cell.n << ',' << s.cell.patterns << ',' << s.cell.granularity << ','
        << to_string(s.cell.mode) << ',' << s.runs << ',' << s.best_run << ',' << s.best_seed << ',' << s.best.adms
        << ',' << s.best.wavelengths << ',' << s.w_min << ',' << s.m_min << ',' << optional_text(s.w_max) << ','
        << s.m_max << '\n';
  }
  return csv.str();
}

std::string timings_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream csv;
  csv << "topology,n,M,g,mode,run,wall_time\n";
  for (const ResultRow& r : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_time);
    csv << to_string(r.cell.topology) << ',' << r.cell.n << ',' << r.cell.patterns << ',' << r.cell.granularity << ','
        << to_string(r.cell.mode) << ',' << r.run << ',' << buf << '\n';
  }
  return csv.str();
}

std::vector<ResultRow> parse_results_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("results table is empty");
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    f.push_back(cur);
    if (f.size() != 15) {
      throw std::invalid_argument("results line " + std::to_string(line_no) + ": expected 15 fields, got " +
                                  std::to_string(f.size()));
    }
    try {
      ResultRow r;
      r.cell.topology = topology_kind_from_string(f[0]);
      r.cell.n = std::stoi(f[1]);
      r.cell.patterns = std::stoi(f[2]);
      r.cell.granularity = std::stoi(f[3]);
      r.cell.mode = split_mode_from_string(f[4]);
      r.run = std::stoi(f[5]);
      r.seed = std::stoull(f[6]);
      r.best_adms = std::stoi(f[7]);
      r.best_wavelengths = std::stoi(f[8]);
      r.w_min = std::stoll(f[9]);
      r.m_min = std::stoll(f[10]);
      if (!f[11].empty()) r.w_max = std::stoll(f[11]);
      r.m_max = std::stoll(f[12]);
      r.generations = std::stoi(f[13]);
      r.wall_time = f[14].empty() ? 0.0 : std::stod(f[14]);
      rows.push_back(r);
    } catch (const std::exception& e) {
      throw std::invalid_argument("results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> load_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_results_csv(ss.str());
}

PlotData emit_plot_data(const std::vector<ResultRow>& rows, const PlotRequest& request) {
  if (rows.empty()) throw std::invalid_argument("results table is empty");
  const auto summary = summarize(rows);
  const bool by_nodes = request.x == PlotAxis::nodes;

  auto in_slice = [&](const Cell& c) {
    if (c.topology != request.topology || c.patterns != request.patterns) return false;
    return by_nodes ? c.granularity == request.granularity : c.n == request.n;
  };
  std::set<int> xs;
  for (const auto& s : summary) {
    if (in_slice(s.cell)) xs.insert(by_nodes ? s.cell.n : s.cell.granularity);
  }

  PlotData data;
  data.x_label = by_nodes ? "n" : "g";
  data.x.assign(xs.begin(), xs.end());
  const std::size_t width = data.x.size();
  for (SplitMode mode : kAllModes) data.series.push_back({to_string(mode), std::vector<std::optional<long long>>(width)});
  data.series.push_back({"lower_bound", std::vector<std::optional<long long>>(width)});
  data.series.push_back({"upper_bound", std::vector<std::optional<long long>>(width)});

  const bool adms = request.metric == PlotMetric::adms;
  for (const auto& s : summary) {
    if (!in_slice(s.cell)) continue;
    const int xv = by_nodes ? s.cell.n : s.cell.granularity;
    const auto col = static_cast<std::size_t>(std::lower_bound(data.x.begin(), data.x.end(), xv) - data.x.begin());
    data.series[static_cast<std::size_t>(s.cell.mode)].y[col] = adms ? s.best.adms : s.best.wavelengths;
    data.series[4].y[col] = adms ? s.m_min : s.w_min;
    data.series[5].y[col] = adms ? std::optional<long long>(s.m_max) : s.w_max;
  }
  return data;
}

std::string plot_csv(const PlotData& data) {
  std::ostringstream csv;
  csv << data.x_label;
  for (const auto& s : data.series) csv << ',' << s.name;
  csv << '\n';
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    csv << data.x[i];
    for (const auto& s : data.series) csv << ',' << optional_text(s.y[i]);
    csv << '\n';
  }
  return csv.str();
}

std::vector<std::pair<std::string, PlotRequest>> figure_requests(const std::string& figure, int patterns,
                                                                 int granularity) {
  PlotRequest base;
  base.patterns = patterns;
  base.granularity = granularity;
  std::vector<std::pair<std::string, PlotRequest>> out;
  auto add = [&](const std::string& name, TopologyKind topo, PlotAxis x, PlotMetric metric) {
    PlotRequest r = base;
    r.topology = topo;
    r.x = x;
    r.metric = metric;
    out.emplace_back(name, r);
  };
  const std::string tag = "_M" + std::to_string(patterns) + "_g" + std::to_string(granularity);
  if (figure == "tree-adms") {
    add("tree_adms" + tag, TopologyKind::complete_binary, PlotAxis::nodes, PlotMetric::adms);
  } else if (figure == "tree-wavelengths") {
    add("tree_wavelengths" + tag, TopologyKind::complete_binary, PlotAxis::nodes, PlotMetric::wavelengths);
  } else if (figure == "granularity") {
    const std::string t = "_n15_M" + std::to_string(patterns);
    add("granularity_adms" + t, TopologyKind::complete_binary, PlotAxis::granularity, PlotMetric::adms);
    add("granularity_wavelengths" + t, TopologyKind::complete_binary, PlotAxis::granularity, PlotMetric::wavelengths);
  } else if (figure == "star") {
    add("star_adms" + tag, TopologyKind::star, PlotAxis::nodes, PlotMetric::adms);
    add("star_wavelengths" + tag, TopologyKind::star, PlotAxis::nodes, PlotMetric::wavelengths);
  } else {
    throw std::invalid_argument("unknown figure '" + figure + "' (expected tree-adms, tree-wavelengths, granularity or star)");
  }
  return out;
}

}  // namespace treegroom
