#include "treegroom/topology.hpp"

#include <algorithm>
#include <fstream>

namespace treegroom {

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::star: return "star";
    case TopologyKind::complete_binary: return "complete_binary";
    case TopologyKind::parent_vector: return "parent_vector";
  }
  return "unknown";
}

TopologyKind topology_kind_from_string(const std::string& name) {
  if (name == "star") return TopologyKind::star;
  if (name == "complete_binary" || name == "binary" || name == "tree") return TopologyKind::complete_binary;
  if (name == "parent_vector" || name == "parents") return TopologyKind::parent_vector;
  throw TopologyError("unknown topology kind '" + name + "'");
}

TreeTopology TreeTopology::star(int n) {
  if (n < 2) throw TopologyError("star needs n >= 2, got " + std::to_string(n));
  std::vector<NodeId> parents(n, 0);
  parents[0] = kNoParent;
  return from_parents(std::move(parents), TopologyKind::star);
}

TreeTopology TreeTopology::complete_binary(int n) {
  if (n < 2) throw TopologyError("binary tree needs n >= 2, got " + std::to_string(n));
  std::vector<NodeId> parents(n);
  parents[0] = kNoParent;
  for (int i = 1; i < n; ++i) parents[i] = (i - 1) / 2;
  return from_parents(std::move(parents), TopologyKind::complete_binary);
}

TreeTopology TreeTopology::build(TopologyKind kind, int n) {
  switch (kind) {
    case TopologyKind::star: return star(n);
    case TopologyKind::complete_binary: return complete_binary(n);
    case TopologyKind::parent_vector: break;
  }
  throw TopologyError("parent_vector topologies need an explicit parent list");
}

TreeTopology TreeTopology::from_parents(std::vector<NodeId> parents, TopologyKind kind) {
  const int n = static_cast<int>(parents.size());
  if (n < 2) throw TopologyError("topology needs n >= 2, got " + std::to_string(n));
  if (parents[0] != kNoParent) throw TopologyError("node 0 is the root and must have no parent");
  for (int v = 1; v < n; ++v) {
    if (parents[v] < 0 || parents[v] >= n || parents[v] == v) {
      throw TopologyError("node " + std::to_string(v) + " has invalid parent " +
                          std::to_string(parents[v]));
    }
  }
  // Every node must reach the root within n steps; otherwise it sits on a cycle
  // detached from node 0.
  for (int v = 1; v < n; ++v) {
    NodeId u = v;
    int steps = 0;
    while (u != 0 && steps <= n) {
      u = parents[u];
      ++steps;
    }
    if (u != 0) {
      throw TopologyError("node " + std::to_string(v) +
                          " does not reach root 0 (cycle or disconnected component)");
    }
  }

  TreeTopology topo;
  topo.kind_ = kind;
  topo.parent_ = std::move(parents);
  topo.finish();
  return topo;
}

void TreeTopology::finish() {
  const int n = node_count();
  children_.assign(n, {});
  for (int v = 1; v < n; ++v) children_[parent_[v]].push_back(v);

  depth_.assign(n, 0);
  // Parents need not precede children in a general parent vector, so resolve
  // depths by walking up.
  for (int v = 1; v < n; ++v) {
    int d = 0;
    for (NodeId u = v; u != 0; u = parent_[u]) ++d;
    depth_[v] = d;
  }

  interior_.clear();
  for (int v = 0; v < n; ++v) {
    if (!children_[v].empty()) interior_.push_back(v);
  }

  links_.clear();
  links_.reserve(2 * (n - 1));
  for (int c = 1; c < n; ++c) {
    links_.push_back({c, parent_[c]});
    links_.push_back({parent_[c], c});
  }
}

std::vector<NodeId> TreeTopology::leaves() const {
  std::vector<NodeId> out;
  for (int v = 0; v < node_count(); ++v) {
    if (children_[v].empty()) out.push_back(v);
  }
  return out;
}

bool TreeTopology::is_star_shaped() const {
  return std::all_of(parent_.begin() + 1, parent_.end(), [](NodeId p) { return p == 0; });
}

bool TreeTopology::is_binary() const {
  return std::all_of(children_.begin(), children_.end(),
                     [](const auto& c) { return c.size() <= 2; });
}

DirectedLink TreeTopology::link(LinkId id) const {
  if (id < 0 || id >= link_count()) throw TopologyError("link id out of range: " + std::to_string(id));
  return links_[id];
}

LinkId TreeTopology::link_id(NodeId from, NodeId to) const {
  const int n = node_count();
  if (from < 0 || from >= n || to < 0 || to >= n) throw TopologyError("node out of range");
  if (from != 0 && parent_[from] == to) return 2 * (from - 1);
  if (to != 0 && parent_[to] == from) return 2 * (to - 1) + 1;
  throw TopologyError("nodes " + std::to_string(from) + " and " + std::to_string(to) +
                      " are not adjacent");
}

DirectedPath TreeTopology::route(NodeId i, NodeId j) const {
  const int n = node_count();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw TopologyError("route endpoints out of range: " + std::to_string(i) + ", " +
                        std::to_string(j));
  }
  if (i == j) throw TopologyError("route requires distinct endpoints, got " + std::to_string(i) + " twice");

  std::vector<NodeId> up;    // i, parent(i), ..., lca
  std::vector<NodeId> down;  // j, parent(j), ..., child of lca
  NodeId a = i;
  NodeId b = j;
  up.push_back(a);
  down.push_back(b);
  while (depth_[a] > depth_[b]) up.push_back(a = parent_[a]);
  while (depth_[b] > depth_[a]) down.push_back(b = parent_[b]);
  while (a != b) {
    up.push_back(a = parent_[a]);
    down.push_back(b = parent_[b]);
  }
  down.pop_back();  // lca already in `up`

  std::vector<NodeId> nodes = std::move(up);
  nodes.insert(nodes.end(), down.rbegin(), down.rend());

  std::vector<LinkId> links;
  links.reserve(nodes.size() - 1);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) links.push_back(link_id(nodes[k], nodes[k + 1]));
  return DirectedPath(std::move(links), std::move(nodes));
}

nlohmann::json to_json(const TreeTopology& topo) {
  return {{"kind", to_string(topo.kind())},
          {"n", topo.node_count()},
          {"parents", std::vector<NodeId>(topo.parents().begin(), topo.parents().end())}};
}

TreeTopology topology_from_json(const nlohmann::json& j) {
  try {
    const TopologyKind kind = topology_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("parents")) {
      auto parents = j.at("parents").get<std::vector<NodeId>>();
      if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(parents.size())) {
        throw TopologyError("topology 'n' disagrees with the length of 'parents'");
      }
      return TreeTopology::from_parents(std::move(parents), kind);
    }
    return TreeTopology::build(kind, j.at("n").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw TopologyError(std::string("malformed topology JSON: ") + e.what());
  }
}

TreeTopology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TopologyError("cannot open topology file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw TopologyError("cannot parse topology file " + path + ": " + e.what());
  }
  return topology_from_json(j);
}

void save_topology(const TreeTopology& topo, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TopologyError("cannot write topology file " + path);
  out << to_json(topo).dump(2) << '\n';
}

}  // namespace treegroom
