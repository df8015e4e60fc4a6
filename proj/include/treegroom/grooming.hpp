#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treegroom/topology.hpp"
#include "treegroom/traffic.hpp"

namespace treegroom {

inline constexpr int kDefaultMaxParts = 4;

enum class FragmentKind { whole, part, segment };
enum class SegmentSide { source_side, destination_side };

std::string to_string(FragmentKind kind);
std::string to_string(SegmentSide side);

// One placement of (a piece of) a demand on a single wavelength, carrying the
// listed amount in every pattern. A demand with several fragments is split.
struct Fragment {
  int demand = 0;
  FragmentKind kind = FragmentKind::whole;
  int ordinal = 0;              // part number for parts, 0 otherwise
  NodeId cut_node = -1;         // segments only
  SegmentSide side = SegmentSide::source_side;
  int wavelength = 0;           // 0-based wavelength index
  std::vector<int> amounts;     // one entry per pattern

  bool operator==(const Fragment&) const = default;
};

struct DemandInfo {
  NodePair ends;
  DirectedPath route;
  std::vector<int> amounts;  // per pattern
  bool always_zero = false;
};

// Immutable per-instance data shared by every decode of the same problem:
// the instance, the topology and the precomputed route of each demand.
class GroomingContext {
 public:
  GroomingContext(TreeTopology topology, TrafficInstance instance, int max_parts = kDefaultMaxParts);

  const TreeTopology& topology() const { return topology_; }
  const TrafficInstance& instance() const { return instance_; }
  int max_parts() const { return max_parts_; }
  int node_count() const { return topology_.node_count(); }
  int link_count() const { return topology_.link_count(); }
  int pattern_count() const { return instance_.pattern_count(); }
  int granularity() const { return instance_.granularity(); }
  int demand_count() const { return static_cast<int>(demands_.size()); }
  const DemandInfo& demand(int k) const { return demands_[k]; }
  const DemandIndex& index() const { return index_; }

 private:
  TreeTopology topology_;
  TrafficInstance instance_;
  int max_parts_;
  DemandIndex index_;
  std::vector<DemandInfo> demands_;
};

// Per-wavelength bookkeeping. Loads are indexed [pattern * links + link] and
// node counters [pattern * n + node].
class WavelengthState {
 public:
  WavelengthState(int id, int nodes, int links, int patterns);

  int id() const { return id_; }
  bool drops_at(NodeId v) const { return drops_[v] != 0; }
  int drop_count() const { return drop_count_; }
  std::vector<NodeId> drop_nodes() const;

  int link_load(int pattern, LinkId link) const { return link_load_[pattern * links_ + link]; }
  int node_add(int pattern, NodeId v) const { return node_add_[pattern * nodes_ + v]; }
  int node_drop(int pattern, NodeId v) const { return node_drop_[pattern * nodes_ + v]; }
  bool empty() const { return drop_count_ == 0; }

 private:
  friend class GroomingState;

  int id_;
  int nodes_;
  int links_;
  std::vector<char> drops_;
  int drop_count_ = 0;
  std::vector<int> link_load_;
  std::vector<int> node_add_;
  std::vector<int> node_drop_;
};

// Number of {i, j} that would need a new ADM on w.
int adm_delta(const WavelengthState& w, NodeId i, NodeId j);

struct Tally {
  int adms = 0;
  int wavelengths = 0;
  bool operator==(const Tally&) const = default;
};

enum class DivideStatus {
  applied,
  not_open,
  budget_exhausted,
  endpoints_not_dropped,
  no_spare_capacity,
};

struct DivideResult {
  DivideStatus status = DivideStatus::not_open;
  std::vector<int> part;  // per-pattern amounts placed on the wavelength
  bool applied() const { return status == DivideStatus::applied; }
};

enum class CutStatus {
  applied,
  not_open,
  already_split,         // cut before
  single_link,           // no interior node on the route
  no_anchor,             // no endpoint + interior node dropping on w
  no_partner,            // no earlier wavelength dropping at f and the far end
  does_not_fit,
};

struct CutResult {
  CutStatus status = CutStatus::not_open;
  NodeId cut_node = -1;
  SegmentSide on_current = SegmentSide::source_side;  // which segment rides the current wavelength
  int partner = -1;                                    // wavelength index of the other segment
  bool applied() const { return status == CutStatus::applied; }
};

std::string to_string(DivideStatus status);
std::string to_string(CutStatus status);

// Working state of one decode. Wavelength arguments are 0-based indices.
class GroomingState {
 public:
  explicit GroomingState(const GroomingContext& context);

  const GroomingContext& context() const { return *ctx_; }

  int open_wavelength();
  int wavelength_count() const { return static_cast<int>(wavelengths_.size()); }
  const WavelengthState& wavelength(int w) const { return wavelengths_.at(w); }
  std::span<const WavelengthState> wavelengths() const { return wavelengths_; }

  bool is_open(int k) const { return open_[k] != 0; }
  int open_count() const { return open_count_; }
  int remaining(int k, int pattern) const { return remaining_[k * patterns_ + pattern]; }
  std::span<const int> remaining(int k) const {
    return std::span<const int>(remaining_).subspan(static_cast<std::size_t>(k) * patterns_, patterns_);
  }
  // Wavelength indices dropping at v, ascending.
  std::span<const int> wavelengths_at(NodeId v) const { return wavelengths_at_[v]; }
  int parts_of(int k) const { return parts_[k]; }
  bool was_cut(int k) const { return cut_[k] != 0; }

  int adm_delta(int w, int k) const;
  // Every pattern's remaining amount fits on the whole route and at both
  // endpoint add/drop counters.
  bool fits_whole(int w, int k) const;
  // Throws std::logic_error unless fits_whole(w, k).
  void place_whole(int w, int k);
  bool can_divide(int k) const;
  DivideResult try_divide(int w, int k);
  // Searches wavelengths s < w for the partner segment.
  CutResult try_cut(int w, int k);

  Tally tally() const;
  std::span<const Fragment> fragments() const { return fragments_; }

 private:
  struct SegmentPlan {
    NodeId cut_node;
    std::size_t cut_pos;
    SegmentSide on_current;
    int partner;
  };

  // Whether a sub-route [first, last) of k's links, entering at `from` and
  // leaving at `to`, fits w at the given per-pattern amounts.
  bool fits_span(const WavelengthState& w, std::span<const LinkId> links, NodeId from, NodeId to,
                 std::span<const int> amounts) const;
  void load_span(int w, std::span<const LinkId> links, NodeId from, NodeId to,
                 std::span<const int> amounts);
  void reduce_remaining(int k, std::span<const int> amounts);

  const GroomingContext* ctx_;
  int patterns_;
  int g_;
  std::vector<WavelengthState> wavelengths_;
  std::vector<std::vector<int>> wavelengths_at_;
  std::vector<int> remaining_;
  std::vector<char> open_;
  int open_count_ = 0;
  std::vector<int> parts_;
  std::vector<char> cut_;
  std::vector<Fragment> fragments_;
};

}  // namespace treegroom
