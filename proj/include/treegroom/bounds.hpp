#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "treegroom/topology.hpp"
#include "treegroom/traffic.hpp"

namespace treegroom {

// Loads on one father-child edge. Direction 1 carries father -> child,
// direction 2 child -> father.
struct EdgeLoad {
  NodeId father = 0;
  NodeId child = 0;
  std::vector<long long> downstream;  // per pattern
  std::vector<long long> upstream;    // per pattern
  long long max_downstream = 0;
  long long max_upstream = 0;
};

struct LinkLoadSummary {
  std::vector<EdgeLoad> edges;  // ordered by child node
};

// Units dropped (terminating) and added (originating) at each node.
struct NodeTraffic {
  std::vector<std::vector<long long>> dropped;  // [pattern][node]
  std::vector<std::vector<long long>> added;    // [pattern][node]
  std::vector<long long> max_dropped;           // [node]
  std::vector<long long> max_added;             // [node]
};

struct BoundsReport {
  long long w_min = 0;
  long long m_min = 0;
  std::optional<long long> w_max;  // undefined for non-binary, non-star trees
  long long m_max = 0;
  std::string w_max_rule;          // which formula produced w_max
  std::string m_max_rule;
};

LinkLoadSummary link_loads(const TrafficInstance& instance, const TreeTopology& topology);
NodeTraffic node_add_drop(const TrafficInstance& instance);
BoundsReport bounds_report(const TrafficInstance& instance, const TreeTopology& topology);

// Topology-only upper bounds.
long long binary_tree_max_wavelengths(int n);
long long star_max_wavelengths(int n);
long long tree_max_adms(int n);

bool treated_as_star(const TreeTopology& topology);

nlohmann::json to_json(const BoundsReport& report);

}  // namespace treegroom
