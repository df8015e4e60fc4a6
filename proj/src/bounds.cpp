#include "treegroom/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace treegroom {

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

LinkLoadSummary link_loads(const TrafficInstance& instance, const TreeTopology& topology) {
  const int n = topology.node_count();
  const int patterns = instance.pattern_count();
  std::vector<std::vector<long long>> per_link(topology.link_count(), std::vector<long long>(patterns, 0));
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i == j) continue;
      const DirectedPath path = topology.route(i, j);
      for (int m = 0; m < patterns; ++m) {
        const int r = instance.demand(m, i, j);
        if (r == 0) continue;
        for (LinkId l : path.links()) per_link[l][m] += r;
      }
    }
  }

  LinkLoadSummary summary;
  for (NodeId c = 1; c < n; ++c) {
    EdgeLoad e;
    e.father = topology.parent(c);
    e.child = c;
    e.upstream = per_link[topology.link_id(c, e.father)];
    e.downstream = per_link[topology.link_id(e.father, c)];
    e.max_upstream = *std::max_element(e.upstream.begin(), e.upstream.end());
    e.max_downstream = *std::max_element(e.downstream.begin(), e.downstream.end());
    summary.edges.push_back(std::move(e));
  }
  return summary;
}

NodeTraffic node_add_drop(const TrafficInstance& instance) {
  const int n = instance.node_count();
  const int patterns = instance.pattern_count();
  NodeTraffic t;
  t.dropped.assign(patterns, std::vector<long long>(n, 0));
  t.added.assign(patterns, std::vector<long long>(n, 0));
  for (int m = 0; m < patterns; ++m) {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        const int r = instance.demand(m, i, j);
        t.added[m][i] += r;
        t.dropped[m][j] += r;
      }
    }
  }
  t.max_dropped.assign(n, 0);
  t.max_added.assign(n, 0);
  for (int m = 0; m < patterns; ++m) {
    for (NodeId v = 0; v < n; ++v) {
      t.max_dropped[v] = std::max(t.max_dropped[v], t.dropped[m][v]);
      t.max_added[v] = std::max(t.max_added[v], t.added[m][v]);
    }
  }
  return t;
}

long long binary_tree_max_wavelengths(int n) {
  const long long nn = n;
  return nn % 2 == 1 ? (nn * nn - 1) / 4 : nn * nn / 4;
}

long long star_max_wavelengths(int n) { return n - 1; }

long long tree_max_adms(int n) { return static_cast<long long>(n) * (n - 1); }

bool treated_as_star(const TreeTopology& topology) {
  switch (topology.kind()) {
    case TopologyKind::star: return true;
    case TopologyKind::complete_binary: return false;
    case TopologyKind::parent_vector: return topology.is_star_shaped();
  }
  return false;
}

BoundsReport bounds_report(const TrafficInstance& instance, const TreeTopology& topology) {
  if (instance.node_count() != topology.node_count()) {
    throw std::invalid_argument("instance and topology disagree on node count");
  }
  const long long g = instance.granularity();
  const int n = topology.node_count();
  const LinkLoadSummary loads = link_loads(instance, topology);
  const NodeTraffic traffic = node_add_drop(instance);

  BoundsReport report;
  for (const EdgeLoad& e : loads.edges) {
    report.w_min = std::max({report.w_min, ceil_div(e.max_downstream, g), ceil_div(e.max_upstream, g)});
  }
  for (NodeId s : topology.interior_nodes()) {
    report.w_min = std::max(report.w_min, ceil_div(std::max(traffic.max_dropped[s], traffic.max_added[s]), g));
  }
  for (NodeId v = 0; v < n; ++v) {
    report.m_min += ceil_div(std::max(traffic.max_dropped[v], traffic.max_added[v]), g);
  }

  if (treated_as_star(topology)) {
    report.w_max = star_max_wavelengths(n);
    report.w_max_rule = "star: n-1";
    report.m_max = static_cast<long long>(n) * report.w_min;
    report.m_max_rule = "star: n*W_min";
  } else {
    if (topology.is_binary()) {
      report.w_max = binary_tree_max_wavelengths(n);
      report.w_max_rule = n % 2 == 1 ? "binary tree: (n^2-1)/4" : "binary tree: n^2/4";
    } else {
      report.w_max_rule = "undefined: tree is not binary";
    }
    report.m_max = tree_max_adms(n);
    report.m_max_rule = "tree: n(n-1)";
  }
  return report;
}

nlohmann::json to_json(const BoundsReport& report) {
  nlohmann::json j = {{"W_min", report.w_min},
                      {"M_min", report.m_min},
                      {"M_max", report.m_max},
                      {"W_max_rule", report.w_max_rule},
                      {"M_max_rule", report.m_max_rule}};
  j["W_max"] = report.w_max ? nlohmann::json(*report.w_max) : nlohmann::json(nullptr);
  return j;
}

}  // namespace treegroom
