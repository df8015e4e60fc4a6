#include "treegroom/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "treegroom/bounds.hpp"
#include "treegroom/evolution.hpp"

namespace treegroom {

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << '\n';
  }
  return out.str();
}

std::vector<NodeId> bfs_path(const TreeTopology& topology, NodeId i, NodeId j) {
  const int n = topology.node_count();
  std::vector<std::vector<NodeId>> adj(n);
  for (NodeId v = 1; v < n; ++v) {
    adj[v].push_back(topology.parent(v));
    adj[topology.parent(v)].push_back(v);
  }
  std::vector<NodeId> prev(n, -2);
  std::queue<NodeId> q;
  q.push(i);
  prev[i] = -1;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    if (u == j) break;
    for (NodeId v : adj[u]) {
      if (prev[v] == -2) {
        prev[v] = u;
        q.push(v);
      }
    }
  }
  std::vector<NodeId> path;
  if (prev[j] == -2) return path;
  for (NodeId v = j; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

class Checker {
 public:
  explicit Checker(std::string name) { result_.name = std::move(name); }
  template <typename... Args>
  void fail(const Args&... parts) {
    if (!result_.passed) return;  // keep the first counterexample
    std::ostringstream out;
    (out << ... << parts);
    result_.passed = false;
    result_.detail = out.str();
  }
  bool ok() const { return result_.passed; }
  CheckResult done() { return std::move(result_); }

 private:
  CheckResult result_;
};

using LoadKey = std::tuple<int, int, NodeId, NodeId>;  // wavelength id, pattern, from, to
using NodeKey = std::tuple<int, int, NodeId>;          // wavelength id, pattern, node

}  // namespace

ValidationReport validate(const SolutionRecord& sol, const TrafficInstance& instance,
                          const TreeTopology& topology) {
  ValidationReport report;
  const int n = instance.node_count();
  const int patterns = instance.pattern_count();
  const int g = instance.granularity();
  const DemandIndex index(n);

  Checker header(check::kHeader);
  if (sol.n != n || topology.node_count() != n) header.fail("node count mismatch: solution ", sol.n, ", instance ", n);
  if (sol.patterns != patterns) header.fail("pattern count mismatch: solution ", sol.patterns, ", instance ", patterns);
  if (sol.granularity != g) header.fail("granularity mismatch: solution ", sol.granularity, ", instance ", g);
  const bool header_ok = header.ok();
  report.checks.push_back(header.done());
  if (!header_ok) return report;

  std::set<int> wavelength_ids;
  for (const auto& w : sol.wavelengths) wavelength_ids.insert(w.id);

  // Fragment shape, and per-fragment routes for the load recount.
  Checker shape(check::kFragmentShape);
  std::vector<std::vector<const RecordedFragment*>> by_demand(index.size());
  std::vector<std::vector<NodeId>> frag_path(sol.fragments.size());
  for (std::size_t idx = 0; idx < sol.fragments.size(); ++idx) {
    const RecordedFragment& f = sol.fragments[idx];
    if (f.demand < 0 || f.demand >= index.size()) {
      shape.fail("fragment ", idx, " has demand index ", f.demand, " out of range");
      continue;
    }
    const NodePair ends = index.pair(f.demand);
    if (ends.source != f.source || ends.destination != f.destination) {
      shape.fail("fragment ", idx, " endpoints (", f.source, ",", f.destination, ") do not match demand ", f.demand);
      continue;
    }
    if (static_cast<int>(f.amounts.size()) != patterns) {
      shape.fail("fragment ", idx, " has ", f.amounts.size(), " amounts, expected ", patterns);
      continue;
    }
    if (std::any_of(f.amounts.begin(), f.amounts.end(), [](int a) { return a < 0; })) {
      shape.fail("fragment ", idx, " carries a negative amount");
    }
    if (!wavelength_ids.count(f.wavelength)) {
      shape.fail("fragment ", idx, " refers to unknown wavelength ", f.wavelength);
      continue;
    }
    const std::vector<NodeId> full = bfs_path(topology, f.source, f.destination);
    if (f.kind == FragmentKind::segment) {
      const auto it = std::find(full.begin(), full.end(), f.cut_node);
      if (it == full.end() || it == full.begin() || it + 1 == full.end()) {
        shape.fail("segment of demand ", f.demand, " (", f.source, "->", f.destination, ") is cut at node ",
                   f.cut_node, " which is not interior to its route");
        continue;
      }
      if (f.side == SegmentSide::source_side) {
        frag_path[idx].assign(full.begin(), it + 1);
      } else {
        frag_path[idx].assign(it, full.end());
      }
    } else {
      frag_path[idx] = full;
    }
    by_demand[f.demand].push_back(&f);
  }
  for (int k = 0; k < index.size(); ++k) {
    const auto& frags = by_demand[k];
    int wholes = 0;
    int parts = 0;
    int source_segments = 0;
    int destination_segments = 0;
    std::set<NodeId> cut_nodes;
    std::set<int> ordinals;
    for (const RecordedFragment* f : frags) {
      switch (f->kind) {
        case FragmentKind::whole: ++wholes; break;
        case FragmentKind::part:
          ++parts;
          ordinals.insert(f->ordinal);
          break;
        case FragmentKind::segment:
          ++(f->side == SegmentSide::source_side ? source_segments : destination_segments);
          cut_nodes.insert(f->cut_node);
          break;
      }
    }
    const int segments = source_segments + destination_segments;
    if (wholes > 0 && frags.size() > 1) shape.fail("demand ", k, " has a whole fragment alongside others");
    if (parts > sol.max_parts) shape.fail("demand ", k, " has ", parts, " parts, max_parts is ", sol.max_parts);
    if (static_cast<int>(ordinals.size()) != parts) shape.fail("demand ", k, " repeats a part ordinal");
    if (segments > 2) shape.fail("demand ", k, " has ", segments, " segments, at most 2 allowed");
    if (segments != 0 && (source_segments != 1 || destination_segments != 1)) {
      shape.fail("demand ", k, " segments do not form one source-side and one destination-side piece");
    }
    if (cut_nodes.size() > 1) shape.fail("demand ", k, " is cut at more than one node");
    if (segments == 2) {
      const RecordedFragment* a = nullptr;
      const RecordedFragment* b = nullptr;
      for (const RecordedFragment* f : frags) {
        if (f->kind != FragmentKind::segment) continue;
        (f->side == SegmentSide::source_side ? a : b) = f;
      }
      if (a && b && a->amounts != b->amounts) shape.fail("demand ", k, " segments carry different amounts");
    }
  }
  report.checks.push_back(shape.done());

  // Every fragment identity occupies one wavelength for all patterns.
  Checker nonblocking(check::kStrictNonblocking);
  std::map<std::tuple<int, int, int, int>, std::set<int>> identity_wavelengths;
  for (const auto& f : sol.fragments) {
    const int kind = static_cast<int>(f.kind);
    const int ordinal = f.kind == FragmentKind::part ? f.ordinal : 0;
    const int side = f.kind == FragmentKind::segment ? static_cast<int>(f.side) : 0;
    identity_wavelengths[{f.demand, kind, ordinal, side}].insert(f.wavelength);
  }
  for (const auto& [id, ws] : identity_wavelengths) {
    if (ws.size() > 1) {
      nonblocking.fail("demand ", std::get<0>(id), " ", to_string(static_cast<FragmentKind>(std::get<1>(id))),
                       " fragment appears on wavelengths ", *ws.begin(), " and ", *std::next(ws.begin()));
    }
  }
  report.checks.push_back(nonblocking.done());

  Checker conservation(check::kConservation);
  for (int k = 0; k < index.size(); ++k) {
    const NodePair ends = index.pair(k);
    for (int m = 0; m < patterns; ++m) {
      long long carried = 0;
      for (const RecordedFragment* f : by_demand[k]) {
        // A demand's segments both carry the full amount; count the pair once.
        if (f->kind == FragmentKind::segment && f->side == SegmentSide::destination_side) continue;
        carried += f->amounts[m];
      }
      const int expected = instance.demand(m, ends.source, ends.destination);
      if (carried != expected) {
        conservation.fail("demand (", ends.source, ",", ends.destination, ") pattern ", m, " carries ", carried,
                          " of ", expected);
      }
    }
  }
  report.checks.push_back(conservation.done());

  // Recount loads, node add/drop and drop sets from fragments alone.
  std::map<LoadKey, long long> loads;
  std::map<NodeKey, long long> added;
  std::map<NodeKey, long long> dropped;
  std::map<int, std::set<NodeId>> drops;
  for (std::size_t idx = 0; idx < sol.fragments.size(); ++idx) {
    const RecordedFragment& f = sol.fragments[idx];
    const auto& path = frag_path[idx];
    if (path.size() < 2) continue;
    drops[f.wavelength].insert(path.front());
    drops[f.wavelength].insert(path.back());
    for (int m = 0; m < patterns; ++m) {
      const int a = f.amounts[m];
      if (a == 0) continue;
      added[{f.wavelength, m, path.front()}] += a;
      dropped[{f.wavelength, m, path.back()}] += a;
      for (std::size_t h = 0; h + 1 < path.size(); ++h) loads[{f.wavelength, m, path[h], path[h + 1]}] += a;
    }
  }

  Checker capacity(check::kLinkCapacity);
  for (const auto& [key, load] : loads) {
    if (load > g) {
      capacity.fail("wavelength ", std::get<0>(key), " pattern ", std::get<1>(key), " link ", std::get<2>(key), "->",
                    std::get<3>(key), " carries ", load, " > g=", g);
    }
  }
  std::map<LoadKey, long long> claimed;
  for (const auto& w : sol.wavelengths) {
    for (const auto& l : w.link_loads) {
      for (int m = 0; m < static_cast<int>(l.loads.size()) && m < patterns; ++m) {
        if (l.loads[m] > g) {
          capacity.fail("wavelength ", w.id, " pattern ", m, " link ", l.from, "->", l.to, " reports load ",
                        l.loads[m], " > g=", g);
        }
        if (l.loads[m] != 0) claimed[{w.id, m, l.from, l.to}] += l.loads[m];
      }
    }
  }
  report.checks.push_back(capacity.done());

  Checker consistency(check::kLoadConsistency);
  for (const auto& [key, load] : loads) {
    const auto it = claimed.find(key);
    const long long c = it == claimed.end() ? 0 : it->second;
    if (c != load) {
      consistency.fail("wavelength ", std::get<0>(key), " pattern ", std::get<1>(key), " link ", std::get<2>(key),
                       "->", std::get<3>(key), " reports ", c, " but fragments carry ", load);
    }
  }
  for (const auto& [key, c] : claimed) {
    if (!loads.count(key)) {
      consistency.fail("wavelength ", std::get<0>(key), " pattern ", std::get<1>(key), " link ", std::get<2>(key),
                       "->", std::get<3>(key), " reports ", c, " but no fragment uses it");
    }
  }
  report.checks.push_back(consistency.done());

  Checker node_capacity(check::kNodeCapacity);
  for (const auto* table : {&added, &dropped}) {
    for (const auto& [key, units] : *table) {
      if (units > g) {
        node_capacity.fail("wavelength ", std::get<0>(key), " pattern ", std::get<1>(key), " node ",
                           std::get<2>(key), (table == &added ? " adds " : " drops "), units, " > g=", g);
      }
    }
  }
  report.checks.push_back(node_capacity.done());

  Checker drop_check(check::kDropNodes);
  for (const auto& w : sol.wavelengths) {
    const std::set<NodeId> claimed_drops(w.drop_nodes.begin(), w.drop_nodes.end());
    const auto it = drops.find(w.id);
    const std::set<NodeId> actual = it == drops.end() ? std::set<NodeId>{} : it->second;
    if (claimed_drops != actual || claimed_drops.size() != w.drop_nodes.size()) {
      drop_check.fail("wavelength ", w.id, " reports ", claimed_drops.size(), " drop nodes but fragments terminate at ",
                      actual.size());
    }
  }
  report.checks.push_back(drop_check.done());

  Checker recount(check::kAdmRecount);
  long long adms = 0;
  int used = 0;
  for (const auto& [id, nodes] : drops) {
    adms += static_cast<long long>(nodes.size());
    if (!nodes.empty()) ++used;
  }
  if (adms != sol.adms) recount.fail("solution reports ", sol.adms, " ADMs, recount gives ", adms);
  if (used != sol.wavelength_count) {
    recount.fail("solution reports ", sol.wavelength_count, " wavelengths, recount gives ", used);
  }
  report.checks.push_back(recount.done());

  Checker sandwich(check::kBoundSandwich);
  const BoundsReport b = bounds_report(instance, topology);
  if (used < b.w_min) sandwich.fail(used, " wavelengths is below W_min=", b.w_min);
  if (adms < b.m_min) sandwich.fail(adms, " ADMs is below M_min=", b.m_min);
  report.checks.push_back(sandwich.done());

  return report;
}

OracleResult exhaustive_oracle(const GroomingContext& context, SplitMode mode, std::uint64_t max_permutations,
                               bool validate_each) {
  const int count = context.demand_count();
  std::uint64_t total = 1;
  for (int i = 2; i <= count; ++i) {
    total *= static_cast<std::uint64_t>(i);
    if (total > max_permutations) {
      throw std::invalid_argument("exhaustive oracle refused: " + std::to_string(count) +
                                  "! permutations exceed the limit of " + std::to_string(max_permutations));
    }
  }

  const Decoder decoder(context);
  Chromosome perm(count);
  std::iota(perm.begin(), perm.end(), 0);
  OracleResult result;
  bool first = true;
  do {
    Tally t;
    if (validate_each) {
      const GroomingSolution sol = decoder.decode(perm, mode);
      const ValidationReport report = validate(to_record(sol, context), context.instance(), context.topology());
      if (!report.passed()) throw std::runtime_error("oracle decode failed validation:\n" + report.summary());
      t = sol.tally;
    } else {
      t = decoder.evaluate(perm, mode);
    }
    ++result.permutations;
    if (first || compare_fitness(t, result.best) < 0) {
      result.best = t;
      result.witness = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

}  // namespace treegroom
