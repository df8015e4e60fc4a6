#include "treegroom/traffic.hpp"

#include <algorithm>
#include <fstream>
#include <random>

namespace treegroom {

namespace {

std::string where(int pattern, NodeId i, NodeId j) {
  return "pattern " + std::to_string(pattern) + " at (" + std::to_string(i) + "," +
         std::to_string(j) + ")";
}

constexpr std::uint64_t kExtremeStream = 0x45787472656d65ULL;
constexpr std::uint64_t kMiddleStream = 0x4d6964646c65ULL;

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DemandIndex::DemandIndex(int n) : n_(n) {
  if (n < 2) throw TrafficError("demand index needs n >= 2, got " + std::to_string(n));
}

int DemandIndex::index(NodeId i, NodeId j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || i == j) {
    throw TrafficError("no demand index for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return i * (n_ - 1) + (j < i ? j : j - 1);
}

NodePair DemandIndex::pair(int k) const {
  if (k < 0 || k >= size()) throw TrafficError("demand index out of range: " + std::to_string(k));
  const int i = k / (n_ - 1);
  const int r = k % (n_ - 1);
  return {i, r < i ? r : r + 1};
}

TrafficInstance::TrafficInstance(int n, int patterns, int granularity)
    : n_(n), m_(patterns), g_(granularity) {
  if (n < 2) throw TrafficError("instance needs n >= 2, got " + std::to_string(n));
  if (patterns < 1) throw TrafficError("instance needs at least one pattern");
  if (granularity < 1) throw TrafficError("granularity must be positive");
  data_.assign(static_cast<std::size_t>(patterns) * n * n, 0);
}

TrafficInstance::TrafficInstance(int n, int granularity, std::vector<std::vector<int>> patterns)
    : TrafficInstance(n, static_cast<int>(patterns.size()), granularity) {
  for (int m = 0; m < m_; ++m) {
    if (patterns[m].size() != static_cast<std::size_t>(n) * n) {
      throw TrafficError("pattern " + std::to_string(m) + " is not an n*n matrix");
    }
    std::copy(patterns[m].begin(), patterns[m].end(), data_.begin() + offset(m, 0, 0));
  }
}

int TrafficInstance::demand(int pattern, int k) const {
  const NodePair p = DemandIndex(n_).pair(k);
  return demand(pattern, p.source, p.destination);
}

bool TrafficInstance::is_all_zero(int k) const {
  const NodePair p = DemandIndex(n_).pair(k);
  for (int m = 0; m < m_; ++m) {
    if (demand(m, p.source, p.destination) != 0) return false;
  }
  return true;
}

long long TrafficInstance::total_demand(int pattern) const {
  long long total = 0;
  for (NodeId i = 0; i < n_; ++i) {
    for (NodeId j = 0; j < n_; ++j) total += demand(pattern, i, j);
  }
  return total;
}

void TrafficInstance::validate() const {
  for (int m = 0; m < m_; ++m) {
    for (NodeId i = 0; i < n_; ++i) {
      for (NodeId j = 0; j < n_; ++j) {
        const int r = demand(m, i, j);
        if (i == j && r != 0) throw TrafficError("nonzero diagonal demand in " + where(m, i, j));
        if (r < 0) throw TrafficError("negative demand in " + where(m, i, j));
        if (r > g_) {
          throw TrafficError("demand " + std::to_string(r) + " exceeds granularity " +
                             std::to_string(g_) + " in " + where(m, i, j));
        }
      }
    }
  }
}

TrafficInstance generate_instance(int n, int patterns, int granularity, DemandRange range,
                                  std::uint64_t seed) {
  if (range.low < 0 || range.low > range.high) {
    throw TrafficError("invalid demand range [" + std::to_string(range.low) + "," +
                       std::to_string(range.high) + "]");
  }
  if (range.high > granularity) {
    throw TrafficError("demand range upper bound " + std::to_string(range.high) +
                       " exceeds granularity " + std::to_string(granularity));
  }
  TrafficInstance inst(n, patterns, granularity);
  inst.generation = GenerationInfo{seed, range};

  std::mt19937_64 extreme_rng(mix_seed(mix_seed(seed, kExtremeStream), static_cast<std::uint64_t>(n)));
  std::uniform_int_distribution<int> uniform(range.low, range.high);
  std::vector<int> first(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> last(first.size(), 0);
  for (auto* matrix : {&first, &last}) {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i != j) (*matrix)[static_cast<std::size_t>(i) * n + j] = uniform(extreme_rng);
      }
    }
  }

  const int last_pattern = patterns - 1;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      inst.set_demand(0, i, j, first[static_cast<std::size_t>(i) * n + j]);
      if (last_pattern > 0) inst.set_demand(last_pattern, i, j, last[static_cast<std::size_t>(i) * n + j]);
    }
  }

  std::mt19937_64 middle_rng(
      mix_seed(mix_seed(mix_seed(seed, kMiddleStream), static_cast<std::uint64_t>(n)),
               static_cast<std::uint64_t>(patterns)));
  for (int m = 1; m < last_pattern; ++m) {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        const int a = inst.demand(0, i, j);
        const int b = inst.demand(last_pattern, i, j);
        std::uniform_int_distribution<int> between(std::min(a, b), std::max(a, b));
        inst.set_demand(m, i, j, between(middle_rng));
      }
    }
  }
  return inst;
}

nlohmann::json to_json(const TrafficInstance& instance) {
  const int n = instance.node_count();
  nlohmann::json patterns = nlohmann::json::array();
  for (int m = 0; m < instance.pattern_count(); ++m) {
    nlohmann::json rows = nlohmann::json::array();
    for (NodeId i = 0; i < n; ++i) {
      std::vector<int> row(n);
      for (NodeId j = 0; j < n; ++j) row[j] = instance.demand(m, i, j);
      rows.push_back(row);
    }
    patterns.push_back(std::move(rows));
  }
  nlohmann::json j = {{"n", n},
                      {"M", instance.pattern_count()},
                      {"g", instance.granularity()},
                      {"patterns", std::move(patterns)}};
  if (instance.generation) {
    j["generation"] = {{"seed", instance.generation->seed},
                       {"demand_range", {instance.generation->range.low, instance.generation->range.high}}};
  }
  return j;
}

TrafficInstance instance_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int g = j.at("g").get<int>();
    const auto& pats = j.at("patterns");
    if (j.contains("M") && j.at("M").get<std::size_t>() != pats.size()) {
      throw TrafficError("'M' disagrees with the number of patterns");
    }
    std::vector<std::vector<int>> patterns;
    for (std::size_t m = 0; m < pats.size(); ++m) {
      const auto rows = pats[m].get<std::vector<std::vector<int>>>();
      if (rows.size() != static_cast<std::size_t>(n)) {
        throw TrafficError("pattern " + std::to_string(m) + " has " + std::to_string(rows.size()) +
                           " rows, expected " + std::to_string(n));
      }
      std::vector<int> flat;
      flat.reserve(static_cast<std::size_t>(n) * n);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != static_cast<std::size_t>(n)) {
          throw TrafficError("pattern " + std::to_string(m) + " row " + std::to_string(i) +
                             " has wrong length");
        }
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
      }
      patterns.push_back(std::move(flat));
    }
    TrafficInstance inst(n, g, std::move(patterns));
    if (j.contains("generation")) {
      const auto& gen = j.at("generation");
      const auto range = gen.at("demand_range").get<std::vector<int>>();
      if (range.size() != 2) throw TrafficError("demand_range must have two entries");
      inst.generation = GenerationInfo{gen.at("seed").get<std::uint64_t>(), {range[0], range[1]}};
    }
    inst.validate();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw TrafficError(std::string("malformed instance JSON: ") + e.what());
  }
}

TrafficInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TrafficError("cannot open instance file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw TrafficError("cannot parse instance file " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const TrafficInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TrafficError("cannot write instance file " + path);
  out << to_json(instance).dump() << '\n';
}

}  // namespace treegroom
