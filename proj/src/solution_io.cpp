#include "treegroom/solution_io.hpp"

#include <fstream>
#include <stdexcept>

namespace treegroom {

FragmentKind fragment_kind_from_string(const std::string& name) {
  if (name == "whole") return FragmentKind::whole;
  if (name == "part") return FragmentKind::part;
  if (name == "segment") return FragmentKind::segment;
  throw std::invalid_argument("unknown fragment kind '" + name + "'");
}

SegmentSide segment_side_from_string(const std::string& name) {
  if (name == "source") return SegmentSide::source_side;
  if (name == "destination") return SegmentSide::destination_side;
  throw std::invalid_argument("unknown segment side '" + name + "'");
}

SolutionRecord to_record(const GroomingSolution& solution, const GroomingContext& context) {
  const TreeTopology& topo = context.topology();
  const int patterns = context.pattern_count();

  SolutionRecord rec;
  rec.mode = to_string(solution.mode);
  rec.max_parts = solution.max_parts;
  rec.n = context.node_count();
  rec.patterns = patterns;
  rec.granularity = context.granularity();
  rec.chromosome = solution.chromosome;
  rec.adms = solution.tally.adms;
  rec.wavelength_count = solution.tally.wavelengths;

  for (const WavelengthState& w : solution.wavelengths) {
    RecordedWavelength rw;
    rw.id = w.id();
    rw.drop_nodes = w.drop_nodes();
    for (LinkId l = 0; l < topo.link_count(); ++l) {
      std::vector<int> loads(patterns);
      bool any = false;
      for (int m = 0; m < patterns; ++m) {
        loads[m] = w.link_load(m, l);
        any = any || loads[m] != 0;
      }
      if (!any) continue;
      const DirectedLink link = topo.link(l);
      rw.link_loads.push_back({link.from, link.to, std::move(loads)});
    }
    rec.wavelengths.push_back(std::move(rw));
  }

  for (const Fragment& f : solution.fragments) {
    const NodePair& ends = context.demand(f.demand).ends;
    rec.fragments.push_back({f.demand, ends.source, ends.destination, f.kind, f.ordinal, f.cut_node, f.side,
                             f.wavelength + 1, f.amounts});
  }
  return rec;
}

nlohmann::json to_json(const SolutionRecord& record) {
  nlohmann::json wavelengths = nlohmann::json::array();
  for (const auto& w : record.wavelengths) {
    nlohmann::json loads = nlohmann::json::array();
    for (const auto& l : w.link_loads) loads.push_back({{"from", l.from}, {"to", l.to}, {"loads", l.loads}});
    wavelengths.push_back({{"id", w.id}, {"drop_nodes", w.drop_nodes}, {"link_loads", std::move(loads)}});
  }
  nlohmann::json fragments = nlohmann::json::array();
  for (const auto& f : record.fragments) {
    nlohmann::json jf = {{"demand", f.demand},
                         {"source", f.source},
                         {"destination", f.destination},
                         {"kind", to_string(f.kind)},
                         {"wavelength", f.wavelength},
                         {"amounts", f.amounts}};
    if (f.kind == FragmentKind::part) jf["ordinal"] = f.ordinal;
    if (f.kind == FragmentKind::segment) {
      jf["cut_node"] = f.cut_node;
      jf["side"] = to_string(f.side);
    }
    fragments.push_back(std::move(jf));
  }
  return {{"mode", record.mode},
          {"max_parts", record.max_parts},
          {"n", record.n},
          {"M", record.patterns},
          {"g", record.granularity},
          {"chromosome", record.chromosome},
          {"adms", record.adms},
          {"wavelength_count", record.wavelength_count},
          {"wavelengths", std::move(wavelengths)},
          {"fragments", std::move(fragments)}};
}

SolutionRecord record_from_json(const nlohmann::json& j) {
  try {
    SolutionRecord rec;
    rec.mode = j.value("mode", std::string("None"));
    rec.max_parts = j.value("max_parts", kDefaultMaxParts);
    rec.n = j.at("n").get<int>();
    rec.patterns = j.at("M").get<int>();
    rec.granularity = j.at("g").get<int>();
    rec.chromosome = j.value("chromosome", Chromosome{});
    rec.adms = j.at("adms").get<int>();
    rec.wavelength_count = j.at("wavelength_count").get<int>();
    for (const auto& jw : j.at("wavelengths")) {
      RecordedWavelength w;
      w.id = jw.at("id").get<int>();
      w.drop_nodes = jw.at("drop_nodes").get<std::vector<NodeId>>();
      for (const auto& jl : jw.at("link_loads")) {
        w.link_loads.push_back({jl.at("from").get<NodeId>(), jl.at("to").get<NodeId>(),
                                jl.at("loads").get<std::vector<int>>()});
      }
      rec.wavelengths.push_back(std::move(w));
    }
    for (const auto& jf : j.at("fragments")) {
      RecordedFragment f;
      f.demand = jf.at("demand").get<int>();
      f.source = jf.at("source").get<NodeId>();
      f.destination = jf.at("destination").get<NodeId>();
      f.kind = fragment_kind_from_string(jf.at("kind").get<std::string>());
      f.ordinal = jf.value("ordinal", 0);
      f.cut_node = jf.value("cut_node", -1);
      f.side = segment_side_from_string(jf.value("side", std::string("source")));
      f.wavelength = jf.at("wavelength").get<int>();
      f.amounts = jf.at("amounts").get<std::vector<int>>();
      rec.fragments.push_back(std::move(f));
    }
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed solution JSON: ") + e.what());
  }
}

SolutionRecord load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open solution file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("cannot parse solution file " + path + ": " + e.what());
  }
  return record_from_json(j);
}

void save_solution(const SolutionRecord& record, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write solution file " + path);
  out << to_json(record).dump(1) << '\n';
}

}  // namespace treegroom
