#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "treegroom/decoder.hpp"

namespace treegroom {

// Plain, serializable view of a solution. Wavelength ids are 1-based and links
// are named by their endpoints, so a record can be checked without the
// engine's link numbering.
struct RecordedLinkLoad {
  NodeId from = 0;
  NodeId to = 0;
  std::vector<int> loads;  // per pattern
};

struct RecordedWavelength {
  int id = 0;
  std::vector<NodeId> drop_nodes;
  std::vector<RecordedLinkLoad> link_loads;  // links with nonzero load in some pattern
};

struct RecordedFragment {
  int demand = 0;
  NodeId source = 0;
  NodeId destination = 0;
  FragmentKind kind = FragmentKind::whole;
  int ordinal = 0;
  NodeId cut_node = -1;
  SegmentSide side = SegmentSide::source_side;
  int wavelength = 0;  // 1-based id
  std::vector<int> amounts;
};

struct SolutionRecord {
  std::string mode;
  int max_parts = kDefaultMaxParts;
  int n = 0;
  int patterns = 0;
  int granularity = 0;
  Chromosome chromosome;
  int adms = 0;
  int wavelength_count = 0;
  std::vector<RecordedWavelength> wavelengths;
  std::vector<RecordedFragment> fragments;
};

SolutionRecord to_record(const GroomingSolution& solution, const GroomingContext& context);

nlohmann::json to_json(const SolutionRecord& record);
SolutionRecord record_from_json(const nlohmann::json& j);
SolutionRecord load_solution(const std::string& path);
void save_solution(const SolutionRecord& record, const std::string& path);

FragmentKind fragment_kind_from_string(const std::string& name);
SegmentSide segment_side_from_string(const std::string& name);

}  // namespace treegroom
