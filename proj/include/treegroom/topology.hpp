#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace treegroom {

using NodeId = int;
using LinkId = int;

inline constexpr NodeId kNoParent = -1;

enum class TopologyKind { star, complete_binary, parent_vector };

std::string to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& name);

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DirectedLink {
  NodeId from = 0;
  NodeId to = 0;
  bool operator==(const DirectedLink&) const = default;
};

// Simple path through the tree, stored as both its link sequence and the
// visited node sequence (nodes().size() == links().size() + 1).
class DirectedPath {
 public:
  DirectedPath() = default;
  DirectedPath(std::vector<LinkId> links, std::vector<NodeId> nodes)
      : links_(std::move(links)), nodes_(std::move(nodes)) {}

  std::span<const LinkId> links() const { return links_; }
  std::span<const NodeId> nodes() const { return nodes_; }
  std::size_t hops() const { return links_.size(); }
  NodeId source() const { return nodes_.front(); }
  NodeId destination() const { return nodes_.back(); }
  // Nodes strictly between source and destination.
  std::span<const NodeId> intermediate_nodes() const {
    return nodes_.size() <= 2 ? std::span<const NodeId>{}
                              : std::span<const NodeId>(nodes_).subspan(1, nodes_.size() - 2);
  }

  bool operator==(const DirectedPath&) const = default;

 private:
  std::vector<LinkId> links_;
  std::vector<NodeId> nodes_;
};

// Rooted tree over nodes 0..n-1, root 0. Links are bidirectional; each edge
// (parent(c), c) yields two directed links with identifiers
//   2*(c-1)     : c -> parent(c)   (upstream)
//   2*(c-1) + 1 : parent(c) -> c   (downstream)
// Immutable after construction.
class TreeTopology {
 public:
  static TreeTopology star(int n);
  static TreeTopology complete_binary(int n);
  // parents.size() == n, parents[0] == kNoParent.
  static TreeTopology from_parents(std::vector<NodeId> parents,
                                   TopologyKind kind = TopologyKind::parent_vector);
  static TreeTopology build(TopologyKind kind, int n);

  int node_count() const { return static_cast<int>(parent_.size()); }
  int link_count() const { return 2 * (node_count() - 1); }
  TopologyKind kind() const { return kind_; }

  NodeId parent(NodeId v) const { return parent_.at(v); }
  std::span<const NodeId> parents() const { return parent_; }
  std::span<const NodeId> children(NodeId v) const { return children_.at(v); }
  int depth(NodeId v) const { return depth_.at(v); }

  // Nodes with at least one child; a root with a single child relays traffic
  // and is counted as interior.
  std::span<const NodeId> interior_nodes() const { return interior_; }
  std::vector<NodeId> leaves() const;
  bool is_interior(NodeId v) const { return !children_.at(v).empty(); }

  // True when every non-root node hangs off the root.
  bool is_star_shaped() const;
  // True when no node has more than two children.
  bool is_binary() const;

  DirectedLink link(LinkId id) const;
  LinkId link_id(NodeId from, NodeId to) const;
  std::span<const DirectedLink> directed_links() const { return links_; }
  LinkId reverse(LinkId id) const { return id ^ 1; }

  // Unique simple path i -> j via the lowest common ancestor.
  DirectedPath route(NodeId i, NodeId j) const;

 private:
  TreeTopology() = default;
  void finish();

  TopologyKind kind_ = TopologyKind::parent_vector;
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<int> depth_;
  std::vector<NodeId> interior_;
  std::vector<DirectedLink> links_;
};

nlohmann::json to_json(const TreeTopology& topo);
TreeTopology topology_from_json(const nlohmann::json& j);
TreeTopology load_topology(const std::string& path);
void save_topology(const TreeTopology& topo, const std::string& path);

}  // namespace treegroom
