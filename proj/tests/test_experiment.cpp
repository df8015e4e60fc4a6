#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "treegroom/experiment.hpp"

using namespace treegroom;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig tiny(const fs::path& out) {
  ExperimentConfig c;
  GridSpec g;
  g.topology = TopologyKind::star;
  g.n = {5};
  g.patterns = {2};
  g.granularity = {16};
  g.modes = {SplitMode::none};
  c.grids = {g};
  c.runs_per_cell = 3;
  c.base_seed = 7;
  c.ga.mu = 10;
  c.ga.lambda_offspring = 10;
  c.ga.generations = 10;
  c.output_dir = out.string();
  return c;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("treegroom_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("a sweep is byte-identical when repeated") {
  const auto a = scratch("sweep_a");
  const auto b = scratch("sweep_b");
  auto ca = tiny(a);
  auto cb = tiny(b);
  cb.threads = 3;
  const auto ra = run_sweep(ca);
  const auto rb = run_sweep(cb);
  REQUIRE(ra.rows.size() == 3);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
  CHECK(std::find(names.begin(), names.end(), "results.csv") != names.end());
  CHECK(std::find(names.begin(), names.end(), "summary.csv") != names.end());
  for (const auto& name : names) {
    if (name == "timings.csv" || name == "config.json") continue;
    CAPTURE(name);
    CHECK(slurp(a / name) == slurp(b / name));
  }
  // The wall_time column stays empty unless requested.
  const auto text = slurp(a / "results.csv");
  CHECK(text.substr(0, text.find('\n')).ends_with(",wall_time"));
  CHECK(text.find(",\n") != std::string::npos);
  for (const auto& row : ra.rows) {
    CHECK(row.best_adms >= row.m_min);
    CHECK(row.best_wavelengths >= row.w_min);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("results csv round trip") {
  auto c = tiny(scratch("sweep_rt"));
  const auto r = run_sweep(c, {.write_files = false, .log = {}});
  const auto back = parse_results_csv(results_csv(r.rows, false));
  REQUIRE(back.size() == r.rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].cell == r.rows[i].cell);
    CHECK(back[i].seed == r.rows[i].seed);
    CHECK(back[i].best_adms == r.rows[i].best_adms);
    CHECK(back[i].w_max == r.rows[i].w_max);
  }
  CHECK(results_csv(back, false) == results_csv(r.rows, false));
  CHECK_THROWS(parse_results_csv("nonsense\n1,2\n"));
}

TEST_CASE("zero traffic sweeps to nothing") {
  auto c = tiny(scratch("sweep_zero"));
  c.demand_range = {0, 0};
  c.grids[0].modes = {std::begin(kAllModes), std::end(kAllModes)};
  const auto r = run_sweep(c, {.write_files = false, .log = {}});
  for (const auto& row : r.rows) {
    CHECK(row.best_adms == 0);
    CHECK(row.best_wavelengths == 0);
  }
}

TEST_CASE("a micro cell reaches the exhaustive optimum") {
  ExperimentConfig c;
  GridSpec g;
  g.topology = TopologyKind::star;
  g.n = {3};
  g.patterns = {1};
  g.granularity = {16};
  c.grids = {g};
  c.runs_per_cell = 2;
  c.ga.mu = 20;
  c.ga.lambda_offspring = 20;
  c.ga.generations = 30;
  const auto r = run_sweep(c, {.write_files = false, .log = {}});
  for (const auto& s : r.summary) {
    const GroomingContext ctx(TreeTopology::star(3), cell_instance(c, s.cell));
    CHECK(s.best == oracle::brute_force_best(ctx, s.cell.mode));
  }
}

TEST_CASE("seeds and cells") {
  const auto cells = expand_cells(ExperimentConfig::defaults());
  std::set<std::string> keys;
  for (const auto& cell : cells) CHECK(keys.insert(cell.key()).second);
  Cell cell{TopologyKind::complete_binary, 15, 2, 24, SplitMode::synthesized};
  CHECK(cell.key() == "complete_binary_n15_M2_g24_Synthesized");
  CHECK(instance_seed(1, 15) == mix_seed(1, 15));
  CHECK(run_seed(1, cell, 0) != run_seed(1, cell, 1));
  CHECK(run_seed(1, cell, 0) == run_seed(1, cell, 0));
  // One instance per (n, seed): granularity does not change the traffic.
  ExperimentConfig c;
  Cell other = cell;
  other.granularity = 96;
  const auto a = cell_instance(c, cell);
  const auto b = cell_instance(c, other);
  for (int i = 0; i < 15; ++i) {
    for (int j = 0; j < 15; ++j) CHECK(a.demand(0, i, j) == b.demand(0, i, j));
  }
}

TEST_CASE("plot data: mode series, bounds and gaps") {
  std::vector<ResultRow> rows;
  auto row = [&](int n, SplitMode mode, int adms, int run) {
    ResultRow r;
    r.cell = {TopologyKind::complete_binary, n, 2, 16, mode};
    r.run = run;
    r.best_adms = adms;
    r.best_wavelengths = adms / 10;
    r.m_min = 5 * n;
    r.w_min = n;
    r.m_max = n * (n - 1);
    r.w_max = binary_tree_max_wavelengths(n);
    rows.push_back(r);
  };
  for (SplitMode mode : kAllModes) {
    row(7, mode, 40, 0);
    row(7, mode, 38, 1);
  }
  row(9, SplitMode::none, 60, 0);
  PlotRequest req;
  req.patterns = 2;
  req.granularity = 16;
  const auto d = emit_plot_data(rows, req);
  CHECK(d.x == std::vector<int>{7, 9});
  REQUIRE(d.series.size() == 6);
  CHECK(d.series[0].name == "None");
  CHECK(d.series[4].name == "lower_bound");
  CHECK(d.series[5].name == "upper_bound");
  CHECK(d.series[0].y == std::vector<std::optional<long long>>{38, 60});
  CHECK(d.series[3].y == std::vector<std::optional<long long>>{38, std::nullopt});
  CHECK(d.series[4].y == std::vector<std::optional<long long>>{35, 45});
  CHECK(d.series[5].y == std::vector<std::optional<long long>>{42, 72});
  const auto csv = plot_csv(d);
  CHECK(csv.starts_with("n,None,"));
  CHECK(csv.find("9,60,,,,45,72") != std::string::npos);

  req.n = 7;
  req.x = PlotAxis::granularity;
  req.metric = PlotMetric::wavelengths;
  const auto single = emit_plot_data(rows, req);
  CHECK(single.x == std::vector<int>{16});
  CHECK(single.series[1].y[0] == 3);
  CHECK(single.series[5].y[0] == 12);

  CHECK_THROWS_AS(emit_plot_data({}, req), std::invalid_argument);
  CHECK(figure_requests("star", 2, 16).size() == 2);
  CHECK_THROWS(figure_requests("nope", 2, 16));
}

TEST_CASE("config parsing") {
  const auto base = ExperimentConfig::defaults();
  const auto c = config_from_json(
      {{"grids", {{{"topology", "star"}, {"n", {3, 4}}, {"M", {1}}, {"g", {16}}, {"modes", {"None", "Synthesized"}}}}},
       {"ga", {{"mu", 5}, {"lambda", 6}, {"generations", 7}}},
       {"runs_per_cell", 2},
       {"seed", 9}},
      base);
  CHECK(c.grids.size() == 1);
  CHECK(c.grids[0].modes.size() == 2);
  CHECK(c.ga.mu == 5);
  CHECK(c.ga.lambda_offspring == 6);
  CHECK(c.ga.pc == base.ga.pc);
  CHECK(c.base_seed == 9);
  CHECK(expand_cells(c).size() == 4);
  CHECK(config_from_json(to_json(c), {}).base_seed == 9);

  CHECK_THROWS_AS(config_from_json({{"runs", 3}}, base), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"runs_per_cell", 0}}, base), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"ga", {{"pc", 2.0}}}}, base), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"grids", {{{"topology", "ring"}, {"n", {3}}, {"M", {1}}, {"g", {16}}}}}}, base),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json({{"demand_range", {0, 40}}}, base), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json", base), ConfigError);
}

TEST_CASE("seed from the environment") {
  ::unsetenv(kSeedEnvVar);
  CHECK_FALSE(seed_from_environment().has_value());
  ::setenv(kSeedEnvVar, "123", 1);
  CHECK(seed_from_environment() == std::optional<std::uint64_t>{123});
  ::setenv(kSeedEnvVar, "12x", 1);
  CHECK_THROWS_AS(seed_from_environment(), ConfigError);
  ::unsetenv(kSeedEnvVar);
}
