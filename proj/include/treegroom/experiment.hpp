#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "treegroom/bounds.hpp"
#include "treegroom/decoder.hpp"
#include "treegroom/topology.hpp"
#include "treegroom/traffic.hpp"

namespace treegroom {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a run's best solution fails validation.
class SweepValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSeedEnvVar = "TREEGROOM_SEED";

// Cartesian product of the listed values for one topology family.
struct GridSpec {
  TopologyKind topology = TopologyKind::complete_binary;
  std::vector<int> n;
  std::vector<int> patterns;
  std::vector<int> granularity;
  std::vector<SplitMode> modes{std::begin(kAllModes), std::end(kAllModes)};
};

struct GaSettings {
  int mu = 50;
  int lambda_offspring = 50;
  double pc = 0.6;
  double pm = 0.4;
  int generations = 100;
  int max_parts = kDefaultMaxParts;
};

struct ExperimentConfig {
  std::vector<GridSpec> grids;
  GaSettings ga;
  int runs_per_cell = 10;
  std::uint64_t base_seed = 1;
  DemandRange demand_range;
  std::string output_dir = "sweep_out";
  int threads = 0;                // 0: hardware concurrency
  bool record_wall_time = false;  // fill the wall_time column of results.csv
  bool write_histories = true;
  bool write_solutions = true;

  // Trees n in {7,...,15} odd with M in {2,8}, g in {16,24}; tree n=15, M=2
  // across g in {16,24,48,96}; stars n in {5,...,15} with (M, g) in
  // {(2,16), (2,24), (4,24)}.
  static ExperimentConfig defaults();
  void use_paper_scale();
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
// Fields missing from `j` keep the values of `base`. Throws ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j, const ExperimentConfig& base = {});
ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base = {});

// Reads kSeedEnvVar; nullopt when unset. Throws ConfigError when malformed.
std::optional<std::uint64_t> seed_from_environment();

struct Cell {
  TopologyKind topology = TopologyKind::complete_binary;
  int n = 0;
  int patterns = 0;
  int granularity = 0;
  SplitMode mode = SplitMode::none;

  std::string key() const;  // e.g. complete_binary_n15_M2_g24_Synthesized
  bool operator==(const Cell&) const = default;
};

// Grid cells in config order, duplicates dropped.
std::vector<Cell> expand_cells(const ExperimentConfig& config);

std::uint64_t instance_seed(std::uint64_t base_seed, int n);
std::uint64_t run_seed(std::uint64_t base_seed, const Cell& cell, int run);
TrafficInstance cell_instance(const ExperimentConfig& config, const Cell& cell);

struct ResultRow {
  Cell cell;
  int run = 0;
  std::uint64_t seed = 0;
  int best_adms = 0;
  int best_wavelengths = 0;
  long long w_min = 0;
  long long m_min = 0;
  std::optional<long long> w_max;
  long long m_max = 0;
  int generations = 0;
  double wall_time = 0.0;  // seconds
};

struct CellSummary {
  Cell cell;
  int runs = 0;
  int best_run = 0;
  std::uint64_t best_seed = 0;
  Tally best;
  long long w_min = 0;
  long long m_min = 0;
  std::optional<long long> w_max;
  long long m_max = 0;
};

struct SweepResult {
  std::vector<ResultRow> rows;        // cell order, then run order
  std::vector<CellSummary> summary;   // one per cell
  std::vector<std::string> warnings;
};

struct SweepOptions {
  bool write_files = true;
  std::function<void(const std::string&)> log;  // progress lines
};

SweepResult run_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

// Best run per cell; first run wins ties.
std::vector<CellSummary> summarize(const std::vector<ResultRow>& rows);

std::string results_csv(const std::vector<ResultRow>& rows, bool with_wall_time);
std::string summary_csv(const std::vector<CellSummary>& summary);
std::string timings_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_results_csv(const std::string& text);
std::vector<ResultRow> load_results_csv(const std::string& path);

enum class PlotAxis { nodes, granularity };
enum class PlotMetric { adms, wavelengths };

struct PlotRequest {
  TopologyKind topology = TopologyKind::complete_binary;
  PlotAxis x = PlotAxis::nodes;
  PlotMetric metric = PlotMetric::adms;
  int n = 15;            // fixed when x is granularity
  int patterns = 2;
  int granularity = 16;  // fixed when x is nodes
};

struct PlotSeries {
  std::string name;
  std::vector<std::optional<long long>> y;  // aligned with PlotData::x; nullopt is a gap
};

struct PlotData {
  std::string x_label;
  std::vector<int> x;
  std::vector<PlotSeries> series;  // the four modes, then lower_bound and upper_bound
};

// Best-of-cell values per mode plus the bound series. Throws
// std::invalid_argument on an empty table.
PlotData emit_plot_data(const std::vector<ResultRow>& rows, const PlotRequest& request);
std::string plot_csv(const PlotData& data);

// Named plot sets: tree-adms and tree-wavelengths (binary tree vs n),
// granularity (binary tree n=15 vs g, both metrics), star (star vs n, both
// metrics).
std::vector<std::pair<std::string, PlotRequest>> figure_requests(const std::string& figure, int patterns,
                                                                 int granularity);

}  // namespace treegroom
