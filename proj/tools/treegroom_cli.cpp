// treegroom: strictly nonblocking traffic grooming on WDM trees and stars.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "treegroom/bounds.hpp"
#include "treegroom/decoder.hpp"
#include "treegroom/evolution.hpp"
#include "treegroom/experiment.hpp"
#include "treegroom/solution_io.hpp"
#include "treegroom/topology.hpp"
#include "treegroom/traffic.hpp"
#include "treegroom/verify.hpp"

using namespace treegroom;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitConfig = 2;

// A topology argument is either a JSON file or a kind name sized by the
// instance.
TreeTopology resolve_topology(const std::string& arg, int n) {
  if (std::filesystem::is_regular_file(arg)) {
    TreeTopology t = load_topology(arg);
    if (t.node_count() != n) {
      throw std::invalid_argument("topology " + arg + " has " + std::to_string(t.node_count()) +
                                  " nodes but the instance has " + std::to_string(n));
    }
    return t;
  }
  const TopologyKind kind = topology_kind_from_string(arg);
  if (kind == TopologyKind::parent_vector) throw std::invalid_argument("parent_vector topologies need a JSON file");
  return TreeTopology::build(kind, n);
}

Chromosome load_chromosome(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open chromosome file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  Chromosome c;
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    const json j = json::parse(text);
    const json& arr = j.is_object() ? j.at("chromosome") : j;
    c = arr.get<Chromosome>();
  } else {
    std::istringstream words(text);
    for (std::string w; words >> w;) {
      for (char& ch : w) {
        if (ch == ',') ch = ' ';
      }
      std::istringstream parts(w);
      for (int v; parts >> v;) c.push_back(v);
    }
  }
  return c;
}

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void print_bounds_table(const BoundsReport& b, std::ostream& os) {
  os << std::left << std::setw(8) << "bound" << std::setw(10) << "value" << "rule\n";
  os << std::setw(8) << "W_min" << std::setw(10) << b.w_min << "max edge load / interior add-drop\n";
  os << std::setw(8) << "M_min" << std::setw(10) << b.m_min << "sum over nodes of ceil(max add/drop / g)\n";
  os << std::setw(8) << "W_max" << std::setw(10) << (b.w_max ? std::to_string(*b.w_max) : "undefined") << b.w_max_rule
     << "\n";
  os << std::setw(8) << "M_max" << std::setw(10) << b.m_max << b.m_max_rule << "\n";
}

struct GaFlags {
  int mu = 50;
  int lambda = 50;
  double pc = 0.6;
  double pm = 0.4;
  int gens = 100;
  bool paper_scale = false;
};

void add_ga_flags(CLI::App* cmd, GaFlags& f) {
  cmd->add_option("--mu", f.mu, "Population size")->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "Offspring per generation")->capture_default_str();
  cmd->add_option("--pc", f.pc, "Crossover probability")->capture_default_str();
  cmd->add_option("--pm", f.pm, "Mutation probability")->capture_default_str();
  cmd->add_option("--gens", f.gens, "Generations")->capture_default_str();
  cmd->add_flag("--paper-scale", f.paper_scale, "Use mu=lambda=200 and 500 generations");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strictly nonblocking traffic grooming on WDM tree and star networks"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random traffic instance");
  int gen_n = 15, gen_m = 2, gen_g = 16, gen_low = 0, gen_high = 15;
  std::uint64_t gen_seed = 1;
  std::string gen_out, gen_topology, gen_topology_out;
  gen->add_option("--n", gen_n, "Nodes")->capture_default_str();
  gen->add_option("--m", gen_m, "Traffic patterns")->capture_default_str();
  gen->add_option("--g", gen_g, "Granularity")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("--low", gen_low, "Smallest demand")->capture_default_str();
  gen->add_option("--high", gen_high, "Largest demand")->capture_default_str();
  gen->add_option("--topology", gen_topology, "Also write this topology kind (star, binary)");
  gen->add_option("--topology-out", gen_topology_out, "Path for the topology JSON");
  gen->add_option("--out", gen_out, "Instance JSON path (default stdout)");

  // decode
  auto* dec = app.add_subcommand("decode", "Decode one chromosome");
  std::string dec_chrom, dec_inst, dec_topo = "binary", dec_mode = "None", dec_out, dec_trace;
  int dec_parts = kDefaultMaxParts;
  dec->add_option("--chromosome", dec_chrom, "Chromosome file (JSON array or integers)")->required();
  dec->add_option("--instance", dec_inst, "Instance JSON")->required();
  dec->add_option("--topology", dec_topo, "Topology JSON or kind")->capture_default_str();
  dec->add_option("--mode", dec_mode, "None, CutOnly, DivideOnly or Synthesized")->capture_default_str();
  dec->add_option("--max-parts", dec_parts, "Divide budget")->capture_default_str();
  dec->add_option("--out", dec_out, "Solution JSON path (default stdout)");
  dec->add_option("--trace", dec_trace, "Write the placement trace JSON here");

  // run
  auto* run = app.add_subcommand("run", "Run the GA on one instance");
  std::string run_inst, run_topo = "binary", run_mode = "None", run_out, run_history;
  std::uint64_t run_seed_value = 1;
  int run_parts = kDefaultMaxParts;
  GaFlags run_ga;
  run->add_option("--instance", run_inst, "Instance JSON")->required();
  run->add_option("--topology", run_topo, "Topology JSON or kind")->capture_default_str();
  run->add_option("--mode", run_mode, "Split mode")->capture_default_str();
  run->add_option("--seed", run_seed_value, "Seed")->capture_default_str();
  run->add_option("--max-parts", run_parts, "Divide budget")->capture_default_str();
  run->add_option("--out", run_out, "Best solution JSON path (default stdout)");
  run->add_option("--history", run_history, "Per-generation history CSV path");
  add_ga_flags(run, run_ga);

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Print wavelength and ADM bounds");
  std::string bnd_inst, bnd_topo = "binary", bnd_out;
  bnd->add_option("--instance", bnd_inst, "Instance JSON")->required();
  bnd->add_option("--topology", bnd_topo, "Topology JSON or kind")->capture_default_str();
  bnd->add_option("--out", bnd_out, "Also write the JSON report here");

  // validate
  auto* val = app.add_subcommand("validate", "Check a solution against an instance");
  std::string val_sol, val_inst, val_topo = "binary";
  val->add_option("--solution", val_sol, "Solution JSON")->required();
  val->add_option("--instance", val_inst, "Instance JSON")->required();
  val->add_option("--topology", val_topo, "Topology JSON or kind")->capture_default_str();

  // oracle
  auto* orc = app.add_subcommand("oracle", "Best fitness over all chromosomes (small instances)");
  std::string orc_inst, orc_topo = "star", orc_mode = "None";
  std::uint64_t orc_max = kDefaultMaxPermutations;
  int orc_parts = kDefaultMaxParts;
  orc->add_option("--instance", orc_inst, "Instance JSON")->required();
  orc->add_option("--topology", orc_topo, "Topology JSON or kind")->capture_default_str();
  orc->add_option("--mode", orc_mode, "Split mode")->capture_default_str();
  orc->add_option("--max-perms", orc_max, "Refuse if N! exceeds this")->capture_default_str();
  orc->add_option("--max-parts", orc_parts, "Divide budget")->capture_default_str();

  // sweep
  auto* swp = app.add_subcommand("sweep", "Run an experiment grid");
  std::string swp_config, swp_out;
  std::optional<int> swp_runs, swp_threads, swp_mu, swp_lambda, swp_gens;
  std::optional<std::uint64_t> swp_seed;
  bool swp_paper = false, swp_quiet = false, swp_wall = false, swp_dump = false;
  swp->add_option("--config", swp_config, "Config JSON (defaults to the built-in grid)");
  swp->add_option("--out", swp_out, "Output directory");
  swp->add_option("--runs", swp_runs, "Runs per cell");
  swp->add_option("--seed", swp_seed, "Base seed");
  swp->add_option("--threads", swp_threads, "Worker threads (0: all cores)");
  swp->add_option("--mu", swp_mu, "Population size");
  swp->add_option("--lambda", swp_lambda, "Offspring per generation");
  swp->add_option("--gens", swp_gens, "Generations");
  swp->add_flag("--paper-scale", swp_paper, "Use mu=lambda=200 and 500 generations");
  swp->add_flag("--wall-time", swp_wall, "Fill the wall_time column of results.csv");
  swp->add_flag("--print-config", swp_dump, "Print the effective config and exit");
  swp->add_flag("--quiet", swp_quiet, "No progress lines");

  // plot
  auto* plt = app.add_subcommand("plot", "Emit plot series from results.csv");
  std::string plt_results, plt_figure, plt_out = ".", plt_topo = "binary", plt_x = "n", plt_metric = "adms";
  int plt_n = 15, plt_m = 2, plt_g = 16;
  plt->add_option("--results", plt_results, "results.csv from a sweep")->required();
  plt->add_option("--figure", plt_figure, "tree-adms, tree-wavelengths, granularity or star");
  plt->add_option("--topology", plt_topo, "Topology kind for a custom series")->capture_default_str();
  plt->add_option("--x", plt_x, "x variable: n or g")->capture_default_str();
  plt->add_option("--metric", plt_metric, "adms or wavelengths")->capture_default_str();
  plt->add_option("--n", plt_n, "Fixed n when x is g")->capture_default_str();
  plt->add_option("--m", plt_m, "Fixed M")->capture_default_str();
  plt->add_option("--g", plt_g, "Fixed g when x is n")->capture_default_str();
  plt->add_option("--out", plt_out, "Output directory (or file for a custom series)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) {
      TrafficInstance inst = generate_instance(gen_n, gen_m, gen_g, {gen_low, gen_high}, gen_seed);
      write_json(to_json(inst), gen_out);
      if (!gen_topology.empty()) {
        const TreeTopology t = resolve_topology(gen_topology, gen_n);
        write_json(to_json(t), gen_topology_out);
      }
      return kExitOk;
    }

    if (*dec) {
      const TrafficInstance inst = load_instance(dec_inst);
      GroomingContext ctx(resolve_topology(dec_topo, inst.node_count()), inst, dec_parts);
      const Chromosome chrom = load_chromosome(dec_chrom);
      std::vector<DecodeEvent> trace;
      const GroomingSolution sol = Decoder(ctx).decode(chrom, split_mode_from_string(dec_mode), &trace);
      write_json(to_json(to_record(sol, ctx)), dec_out);
      if (!dec_trace.empty()) {
        json events = json::array();
        for (const auto& e : trace) {
          json ev = {{"step", to_string(e.step)},
                     {"demand", e.demand},
                     {"wavelength", e.wavelength + 1},
                     {"new_adms", e.new_adms},
                     {"amounts", e.amounts}};
          if (e.step == DecodeStep::cut) {
            ev["partner"] = e.partner + 1;
            ev["cut_node"] = e.cut_node;
          }
          events.push_back(ev);
        }
        write_json(events, dec_trace);
      }
      std::cerr << "decode: " << sol.tally.adms << " ADMs, " << sol.tally.wavelengths << " wavelengths\n";
      return kExitOk;
    }

    if (*run) {
      const TrafficInstance inst = load_instance(run_inst);
      GroomingContext ctx(resolve_topology(run_topo, inst.node_count()), inst, run_parts);
      GaParams p;
      p.mu = run_ga.paper_scale ? 200 : run_ga.mu;
      p.lambda_offspring = run_ga.paper_scale ? 200 : run_ga.lambda;
      p.generations = run_ga.paper_scale ? 500 : run_ga.gens;
      p.pc = run_ga.pc;
      p.pm = run_ga.pm;
      p.seed = run_seed_value;
      p.mode = split_mode_from_string(run_mode);
      const EvolutionResult res = evolve(ctx, p);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      const SolutionRecord rec = to_record(res.best, ctx);
      const ValidationReport report = validate(rec, inst, ctx.topology());
      write_json(to_json(rec), run_out);
      if (!run_history.empty()) {
        std::ofstream h(run_history);
        if (!h) throw std::runtime_error("cannot write " + run_history);
        h << "generation,best_adms,best_wavelengths,evals\n";
        for (const auto& r : res.history) {
          h << r.generation << ',' << r.best.adms << ',' << r.best.wavelengths << ',' << r.evaluations << '\n';
        }
      }
      std::cerr << "run: " << res.best.tally.adms << " ADMs, " << res.best.tally.wavelengths << " wavelengths\n";
      if (!report.passed()) {
        std::cerr << report.summary();
        return kExitInvalid;
      }
      return kExitOk;
    }

    if (*bnd) {
      const TrafficInstance inst = load_instance(bnd_inst);
      const TreeTopology topo = resolve_topology(bnd_topo, inst.node_count());
      const BoundsReport b = bounds_report(inst, topo);
      std::cout << to_json(b).dump(2) << "\n";
      print_bounds_table(b, std::cout);
      if (!bnd_out.empty()) write_json(to_json(b), bnd_out);
      return kExitOk;
    }

    if (*val) {
      const TrafficInstance inst = load_instance(val_inst);
      const TreeTopology topo = resolve_topology(val_topo, inst.node_count());
      const SolutionRecord rec = load_solution(val_sol);
      const ValidationReport report = validate(rec, inst, topo);
      std::cout << report.summary();
      return report.passed() ? kExitOk : kExitInvalid;
    }

    if (*orc) {
      const TrafficInstance inst = load_instance(orc_inst);
      GroomingContext ctx(resolve_topology(orc_topo, inst.node_count()), inst, orc_parts);
      const OracleResult r = exhaustive_oracle(ctx, split_mode_from_string(orc_mode), orc_max);
      std::cout << json{{"adms", r.best.adms},
                        {"wavelengths", r.best.wavelengths},
                        {"witness", r.witness},
                        {"permutations", r.permutations}}
                       .dump(2)
                << "\n";
      return kExitOk;
    }

    if (*swp) {
      ExperimentConfig cfg = ExperimentConfig::defaults();
      if (!swp_config.empty()) cfg = load_config(swp_config, cfg);
      if (swp_paper) cfg.use_paper_scale();
      if (auto env = seed_from_environment()) {
        std::cerr << "sweep: base seed " << *env << " from " << kSeedEnvVar << "\n";
        cfg.base_seed = *env;
      }
      if (swp_seed) cfg.base_seed = *swp_seed;
      if (swp_runs) cfg.runs_per_cell = *swp_runs;
      if (swp_threads) cfg.threads = *swp_threads;
      if (swp_mu) cfg.ga.mu = *swp_mu;
      if (swp_lambda) cfg.ga.lambda_offspring = *swp_lambda;
      if (swp_gens) cfg.ga.generations = *swp_gens;
      if (swp_wall) cfg.record_wall_time = true;
      if (!swp_out.empty()) cfg.output_dir = swp_out;
      cfg.validate();
      if (swp_dump) {
        std::cout << to_json(cfg).dump(2) << "\n";
        return kExitOk;
      }
      SweepOptions opts;
      if (!swp_quiet) opts.log = [](const std::string& line) { std::cerr << line << "\n"; };
      const SweepResult res = run_sweep(cfg, opts);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      std::cerr << "sweep: " << res.rows.size() << " runs over " << res.summary.size() << " cells written to "
                << cfg.output_dir << "\n";
      return kExitOk;
    }

    if (*plt) {
      const auto rows = load_results_csv(plt_results);
      std::vector<std::pair<std::string, PlotRequest>> requests;
      bool single_file = false;
      if (!plt_figure.empty()) {
        requests = figure_requests(plt_figure, plt_m, plt_g);
      } else {
        PlotRequest r;
        r.topology = topology_kind_from_string(plt_topo);
        if (plt_x == "n") {
          r.x = PlotAxis::nodes;
        } else if (plt_x == "g") {
          r.x = PlotAxis::granularity;
        } else {
          throw std::invalid_argument("--x must be n or g");
        }
        if (plt_metric == "adms") {
          r.metric = PlotMetric::adms;
        } else if (plt_metric == "wavelengths") {
          r.metric = PlotMetric::wavelengths;
        } else {
          throw std::invalid_argument("--metric must be adms or wavelengths");
        }
        r.n = plt_n;
        r.patterns = plt_m;
        r.granularity = plt_g;
        requests.emplace_back("series", r);
        single_file = !std::filesystem::is_directory(plt_out);
      }
      for (auto& [name, req] : requests) {
        if (!plt_figure.empty()) req.n = plt_n;
        const PlotData data = emit_plot_data(rows, req);
        const std::string path =
            single_file ? plt_out : (std::filesystem::path(plt_out) / (name + ".csv")).string();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << plot_csv(data);
        std::cerr << "plot: " << path << " (" << data.x.size() << " points)\n";
      }
      return kExitOk;
    }
  } catch (const SweepValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
