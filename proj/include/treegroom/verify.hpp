#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treegroom/decoder.hpp"
#include "treegroom/solution_io.hpp"

namespace treegroom {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;  // first counterexample when failed
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
  std::string summary() const;
};

// Check names used in reports.
namespace check {
inline constexpr const char* kHeader = "header";
inline constexpr const char* kFragmentShape = "fragment_shape";
inline constexpr const char* kStrictNonblocking = "strict_nonblocking";
inline constexpr const char* kConservation = "conservation";
inline constexpr const char* kLinkCapacity = "link_capacity";
inline constexpr const char* kLoadConsistency = "load_consistency";
inline constexpr const char* kNodeCapacity = "node_capacity";
inline constexpr const char* kDropNodes = "drop_nodes";
inline constexpr const char* kAdmRecount = "adm_recount";
inline constexpr const char* kBoundSandwich = "bound_sandwich";
}  // namespace check

// Recomputes everything from the fragments, routing with breadth-first search
// over the undirected tree rather than the topology's ancestor walk.
ValidationReport validate(const SolutionRecord& solution, const TrafficInstance& instance,
                          const TreeTopology& topology);

// Path i -> j by breadth-first search; independent of TreeTopology::route.
std::vector<NodeId> bfs_path(const TreeTopology& topology, NodeId i, NodeId j);

inline constexpr std::uint64_t kDefaultMaxPermutations = 40320;

struct OracleResult {
  Tally best;
  Chromosome witness;
  std::uint64_t permutations = 0;
};

// Decodes every permutation of the demand indices and returns the
// lexicographically best fitness. Throws std::invalid_argument when N! exceeds
// max_permutations, and std::runtime_error if any decode fails validation.
OracleResult exhaustive_oracle(const GroomingContext& context, SplitMode mode,
                               std::uint64_t max_permutations = kDefaultMaxPermutations,
                               bool validate_each = true);

}  // namespace treegroom
