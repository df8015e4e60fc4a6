#include "treegroom/grooming.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace treegroom {

std::string to_string(FragmentKind kind) {
  switch (kind) {
    case FragmentKind::whole: return "whole";
    case FragmentKind::part: return "part";
    case FragmentKind::segment: return "segment";
  }
  return "unknown";
}

std::string to_string(SegmentSide side) {
  return side == SegmentSide::source_side ? "source" : "destination";
}

std::string to_string(DivideStatus status) {
  switch (status) {
    case DivideStatus::applied: return "applied";
    case DivideStatus::not_open: return "demand not open";
    case DivideStatus::budget_exhausted: return "divide budget exhausted";
    case DivideStatus::endpoints_not_dropped: return "endpoints not both dropping on wavelength";
    case DivideStatus::no_spare_capacity: return "no spare capacity on route";
  }
  return "unknown";
}

std::string to_string(CutStatus status) {
  switch (status) {
    case CutStatus::applied: return "applied";
    case CutStatus::not_open: return "demand not open";
    case CutStatus::already_split: return "demand already cut";
    case CutStatus::single_link: return "single-link demand cannot be cut";
    case CutStatus::no_anchor: return "no endpoint and interior node dropping on wavelength";
    case CutStatus::no_partner: return "no earlier wavelength drops at the cut node and far endpoint";
    case CutStatus::does_not_fit: return "segments do not fit";
  }
  return "unknown";
}

GroomingContext::GroomingContext(TreeTopology topology, TrafficInstance instance, int max_parts)
    : topology_(std::move(topology)),
      instance_(std::move(instance)),
      max_parts_(max_parts),
      index_(instance_.node_count()) {
  if (topology_.node_count() != instance_.node_count()) {
    throw std::invalid_argument("topology has " + std::to_string(topology_.node_count()) +
                                " nodes but the instance has " + std::to_string(instance_.node_count()));
  }
  if (max_parts_ < 1) throw std::invalid_argument("max_parts must be at least 1");
  instance_.validate();
  const int patterns = instance_.pattern_count();
  demands_.reserve(index_.size());
  for (int k = 0; k < index_.size(); ++k) {
    DemandInfo info;
    info.ends = index_.pair(k);
    info.route = topology_.route(info.ends.source, info.ends.destination);
    info.amounts.resize(patterns);
    info.always_zero = true;
    for (int m = 0; m < patterns; ++m) {
      info.amounts[m] = instance_.demand(m, info.ends.source, info.ends.destination);
      if (info.amounts[m] != 0) info.always_zero = false;
    }
    demands_.push_back(std::move(info));
  }
}

WavelengthState::WavelengthState(int id, int nodes, int links, int patterns)
    : id_(id),
      nodes_(nodes),
      links_(links),
      drops_(nodes, 0),
      link_load_(static_cast<std::size_t>(patterns) * links, 0),
      node_add_(static_cast<std::size_t>(patterns) * nodes, 0),
      node_drop_(static_cast<std::size_t>(patterns) * nodes, 0) {}

std::vector<NodeId> WavelengthState::drop_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < nodes_; ++v) {
    if (drops_[v]) out.push_back(v);
  }
  return out;
}

int adm_delta(const WavelengthState& w, NodeId i, NodeId j) {
  return (w.drops_at(i) ? 0 : 1) + (w.drops_at(j) ? 0 : 1);
}

GroomingState::GroomingState(const GroomingContext& context)
    : ctx_(&context), patterns_(context.pattern_count()), g_(context.granularity()) {
  const int count = context.demand_count();
  remaining_.assign(static_cast<std::size_t>(count) * patterns_, 0);
  open_.assign(count, 0);
  parts_.assign(count, 0);
  cut_.assign(count, 0);
  wavelengths_at_.assign(context.node_count(), {});
  for (int k = 0; k < count; ++k) {
    const DemandInfo& d = context.demand(k);
    if (d.always_zero) continue;
    std::copy(d.amounts.begin(), d.amounts.end(), remaining_.begin() + static_cast<std::ptrdiff_t>(k) * patterns_);
    open_[k] = 1;
    ++open_count_;
  }
}

int GroomingState::open_wavelength() {
  const int w = wavelength_count();
  wavelengths_.emplace_back(w + 1, ctx_->node_count(), ctx_->link_count(), patterns_);
  return w;
}

int GroomingState::adm_delta(int w, int k) const {
  const NodePair& e = ctx_->demand(k).ends;
  return treegroom::adm_delta(wavelengths_[w], e.source, e.destination);
}

bool GroomingState::fits_span(const WavelengthState& w, std::span<const LinkId> links, NodeId from,
                              NodeId to, std::span<const int> amounts) const {
  const int n = w.nodes_;
  const int l = w.links_;
  for (int m = 0; m < patterns_; ++m) {
    const int r = amounts[m];
    if (r == 0) continue;
    if (w.node_add_[m * n + from] + r > g_ || w.node_drop_[m * n + to] + r > g_) return false;
    const int* load = w.link_load_.data() + static_cast<std::ptrdiff_t>(m) * l;
    for (LinkId link : links) {
      if (load[link] + r > g_) return false;
    }
  }
  return true;
}

void GroomingState::load_span(int index, std::span<const LinkId> links, NodeId from, NodeId to,
                              std::span<const int> amounts) {
  WavelengthState& w = wavelengths_[index];
  const int n = w.nodes_;
  const int l = w.links_;
  for (int m = 0; m < patterns_; ++m) {
    const int r = amounts[m];
    w.node_add_[m * n + from] += r;
    w.node_drop_[m * n + to] += r;
    int* load = w.link_load_.data() + static_cast<std::ptrdiff_t>(m) * l;
    for (LinkId link : links) load[link] += r;
  }
  for (NodeId v : {from, to}) {
    if (!w.drops_[v]) {
      w.drops_[v] = 1;
      ++w.drop_count_;
      auto& at = wavelengths_at_[v];
      at.insert(std::upper_bound(at.begin(), at.end(), index), index);
    }
  }
}

void GroomingState::reduce_remaining(int k, std::span<const int> amounts) {
  bool any = false;
  for (int m = 0; m < patterns_; ++m) {
    int& r = remaining_[k * patterns_ + m];
    r -= amounts[m];
    if (r != 0) any = true;
  }
  if (!any) {
    open_[k] = 0;
    --open_count_;
  }
}

bool GroomingState::fits_whole(int w, int k) const {
  const DemandInfo& d = ctx_->demand(k);
  return fits_span(wavelengths_[w], d.route.links(), d.ends.source, d.ends.destination, remaining(k));
}

void GroomingState::place_whole(int w, int k) {
  if (!is_open(k) || !fits_whole(w, k)) {
    throw std::logic_error("place_whole: demand " + std::to_string(k) + " does not fit wavelength " +
                           std::to_string(w + 1));
  }
  const DemandInfo& d = ctx_->demand(k);
  std::vector<int> amounts(remaining(k).begin(), remaining(k).end());
  load_span(w, d.route.links(), d.ends.source, d.ends.destination, amounts);
  Fragment frag;
  frag.demand = k;
  if (parts_[k] > 0) {
    // The leftover of a divided demand is its final part.
    frag.kind = FragmentKind::part;
    frag.ordinal = parts_[k]++;
  }
  frag.wavelength = w;
  frag.amounts = amounts;
  fragments_.push_back(std::move(frag));
  reduce_remaining(k, amounts);
}

bool GroomingState::can_divide(int k) const {
  // One part goes on the current wavelength and the leftover needs at least one
  // more, so dividing is allowed while parts + 2 <= max_parts.
  return is_open(k) && !was_cut(k) && parts_[k] + 2 <= ctx_->max_parts();
}

DivideResult GroomingState::try_divide(int w, int k) {
  DivideResult result;
  if (!is_open(k)) return result;
  if (!can_divide(k)) {
    result.status = DivideStatus::budget_exhausted;
    return result;
  }
  const DemandInfo& d = ctx_->demand(k);
  WavelengthState& wl = wavelengths_[w];
  const NodeId src = d.ends.source;
  const NodeId dst = d.ends.destination;
  if (!wl.drops_at(src) || !wl.drops_at(dst)) {
    result.status = DivideStatus::endpoints_not_dropped;
    return result;
  }

  const int n = wl.nodes_;
  const int l = wl.links_;
  std::vector<int> part(patterns_, 0);
  for (int m = 0; m < patterns_; ++m) {
    const int r = remaining(k, m);
    if (r == 0) continue;
    int spare = std::min(g_ - wl.node_add_[m * n + src], g_ - wl.node_drop_[m * n + dst]);
    const int* load = wl.link_load_.data() + static_cast<std::ptrdiff_t>(m) * l;
    for (LinkId link : d.route.links()) spare = std::min(spare, g_ - load[link]);
    if (spare <= 0) {
      result.status = DivideStatus::no_spare_capacity;
      return result;
    }
    part[m] = std::min(r, spare);
  }

  load_span(w, d.route.links(), src, dst, part);
  Fragment frag;
  frag.demand = k;
  frag.kind = FragmentKind::part;
  frag.ordinal = parts_[k]++;
  frag.wavelength = w;
  frag.amounts = part;
  fragments_.push_back(std::move(frag));
  reduce_remaining(k, part);
  result.status = DivideStatus::applied;
  result.part = std::move(part);
  return result;
}

CutResult GroomingState::try_cut(int w, int k) {
  CutResult result;
  if (!is_open(k)) return result;
  if (was_cut(k)) {
    result.status = CutStatus::already_split;
    return result;
  }
  const DemandInfo& d = ctx_->demand(k);
  const auto links = d.route.links();
  const auto nodes = d.route.nodes();
  const std::size_t hops = links.size();
  if (hops < 2) {
    result.status = CutStatus::single_link;
    return result;
  }

  const WavelengthState& cur = wavelengths_[w];
  const NodeId src = d.ends.source;
  const NodeId dst = d.ends.destination;
  const auto amounts = remaining(k);

  bool anchored = false;
  bool partnered = false;
  bool found = false;
  // Best candidate by (longest on-current segment, smallest cut node, smallest
  // partner, source side first).
  std::tuple<long, NodeId, int, int> best{};
  SegmentPlan plan{};

  for (std::size_t pos = 1; pos < hops; ++pos) {
    const NodeId f = nodes[pos];
    if (!cur.drops_at(f)) continue;
    for (SegmentSide side : {SegmentSide::source_side, SegmentSide::destination_side}) {
      const bool source_on_current = side == SegmentSide::source_side;
      const NodeId anchor = source_on_current ? src : dst;
      const NodeId far = source_on_current ? dst : src;
      if (!cur.drops_at(anchor)) continue;
      anchored = true;

      const auto src_links = links.subspan(0, pos);
      const auto dst_links = links.subspan(pos);
      const auto on_links = source_on_current ? src_links : dst_links;
      const auto off_links = source_on_current ? dst_links : src_links;
      const NodeId on_from = source_on_current ? src : f;
      const NodeId on_to = source_on_current ? f : dst;
      const NodeId off_from = source_on_current ? f : src;
      const NodeId off_to = source_on_current ? dst : f;

      bool on_checked = false;
      bool on_fits = false;
      const auto at_f = wavelengths_at(f);
      const auto at_far = wavelengths_at(far);
      for (std::size_t a = 0, b = 0; a < at_f.size() && b < at_far.size();) {
        if (at_f[a] < at_far[b]) {
          ++a;
          continue;
        }
        if (at_far[b] < at_f[a]) {
          ++b;
          continue;
        }
        const int s = at_f[a];
        ++a;
        ++b;
        if (s >= w) break;
        const WavelengthState& other = wavelengths_[s];
        partnered = true;
        if (!on_checked) {
          on_fits = fits_span(cur, on_links, on_from, on_to, amounts);
          on_checked = true;
        }
        if (!on_fits) break;
        if (!fits_span(other, off_links, off_from, off_to, amounts)) continue;
        const std::tuple<long, NodeId, int, int> key{-static_cast<long>(on_links.size()), f, s,
                                                     source_on_current ? 0 : 1};
        if (!found || key < best) {
          found = true;
          best = key;
          plan = SegmentPlan{f, pos, side, s};
        }
        break;  // smallest partner for this (cut node, side)
      }
    }
  }

  if (!found) {
    result.status = !anchored ? CutStatus::no_anchor : !partnered ? CutStatus::no_partner : CutStatus::does_not_fit;
    return result;
  }

  std::vector<int> carried(amounts.begin(), amounts.end());
  const bool source_on_current = plan.on_current == SegmentSide::source_side;
  const int source_wavelength = source_on_current ? w : plan.partner;
  const int destination_wavelength = source_on_current ? plan.partner : w;
  load_span(source_wavelength, links.subspan(0, plan.cut_pos), src, plan.cut_node, carried);
  load_span(destination_wavelength, links.subspan(plan.cut_pos), plan.cut_node, dst, carried);

  for (SegmentSide side : {SegmentSide::source_side, SegmentSide::destination_side}) {
    Fragment frag;
    frag.demand = k;
    frag.kind = FragmentKind::segment;
    frag.cut_node = plan.cut_node;
    frag.side = side;
    frag.wavelength = side == SegmentSide::source_side ? source_wavelength : destination_wavelength;
    frag.amounts = carried;
    fragments_.push_back(std::move(frag));
  }
  cut_[k] = 1;
  reduce_remaining(k, carried);

  result.status = CutStatus::applied;
  result.cut_node = plan.cut_node;
  result.on_current = plan.on_current;
  result.partner = plan.partner;
  return result;
}

Tally GroomingState::tally() const {
  Tally t;
  for (const auto& w : wavelengths_) {
    t.adms += w.drop_count();
    if (!w.empty()) ++t.wavelengths;
  }
  return t;
}

}  // namespace treegroom
