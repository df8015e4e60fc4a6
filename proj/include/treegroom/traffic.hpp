#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "treegroom/topology.hpp"

namespace treegroom {

class TrafficError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NodePair {
  NodeId source = 0;
  NodeId destination = 0;
  bool operator==(const NodePair&) const = default;
};

// Bijection between ordered node pairs (i, j), i != j, and dense demand
// indices k in [0, n(n-1)): k = i*(n-1) + (j < i ? j : j-1).
class DemandIndex {
 public:
  explicit DemandIndex(int n);

  int node_count() const { return n_; }
  int size() const { return n_ * (n_ - 1); }
  int index(NodeId i, NodeId j) const;
  NodePair pair(int k) const;

 private:
  int n_;
};

struct DemandRange {
  int low = 0;
  int high = 15;
};

// Provenance of a generated instance; absent for hand-written ones.
struct GenerationInfo {
  std::uint64_t seed = 0;
  DemandRange range;
};

// M demand matrices over n nodes with wavelength granularity g. Patterns are
// indexed 0..M-1; entries satisfy 0 <= r <= g with zero diagonal.
class TrafficInstance {
 public:
  TrafficInstance(int n, int patterns, int granularity);
  // patterns[m] is a row-major n*n matrix.
  TrafficInstance(int n, int granularity, std::vector<std::vector<int>> patterns);

  int node_count() const { return n_; }
  int pattern_count() const { return m_; }
  int granularity() const { return g_; }

  int demand(int pattern, NodeId i, NodeId j) const { return data_[offset(pattern, i, j)]; }
  void set_demand(int pattern, NodeId i, NodeId j, int value) { data_[offset(pattern, i, j)] = value; }

  // Amount of demand k (dense index) in a pattern.
  int demand(int pattern, int k) const;
  bool is_all_zero(int k) const;
  long long total_demand(int pattern) const;

  // Throws TrafficError naming the pattern and (i, j) of the first violation.
  void validate() const;

  std::optional<GenerationInfo> generation;

  bool operator==(const TrafficInstance& other) const {
    return n_ == other.n_ && m_ == other.m_ && g_ == other.g_ && data_ == other.data_;
  }

 private:
  std::size_t offset(int pattern, NodeId i, NodeId j) const {
    return (static_cast<std::size_t>(pattern) * n_ + i) * n_ + j;
  }

  int n_;
  int m_;
  int g_;
  std::vector<int> data_;
};

// Patterns 0 and M-1 are drawn uniformly from the demand range and depend only
// on (n, seed, range); intermediate patterns are drawn entrywise between the two
// extremes and additionally depend on M.
TrafficInstance generate_instance(int n, int patterns, int granularity, DemandRange range,
                                  std::uint64_t seed);

nlohmann::json to_json(const TrafficInstance& instance);
TrafficInstance instance_from_json(const nlohmann::json& j);
TrafficInstance load_instance(const std::string& path);
void save_instance(const TrafficInstance& instance, const std::string& path);

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace treegroom
