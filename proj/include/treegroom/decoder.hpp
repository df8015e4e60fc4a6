#pragma once

#include <span>
#include <string>
#include <vector>

#include "treegroom/grooming.hpp"

namespace treegroom {

enum class SplitMode { none, cut_only, divide_only, synthesized };

inline constexpr SplitMode kAllModes[] = {SplitMode::none, SplitMode::cut_only, SplitMode::divide_only,
                                          SplitMode::synthesized};

std::string to_string(SplitMode mode);
SplitMode split_mode_from_string(const std::string& name);

inline bool uses_divide(SplitMode mode) {
  return mode == SplitMode::divide_only || mode == SplitMode::synthesized;
}
inline bool uses_cut(SplitMode mode) { return mode == SplitMode::cut_only || mode == SplitMode::synthesized; }

using Chromosome = std::vector<int>;

enum class DecodeStep { grow, reuse, divide, cut };
std::string to_string(DecodeStep step);

// One placement performed while decoding.
struct DecodeEvent {
  DecodeStep step = DecodeStep::grow;
  int demand = 0;
  int wavelength = 0;   // 0-based; for a cut, the current wavelength
  int partner = -1;     // cut only
  NodeId cut_node = -1; // cut only
  int new_adms = 0;
  std::vector<int> amounts;

  bool operator==(const DecodeEvent&) const = default;
};

struct GroomingSolution {
  SplitMode mode = SplitMode::none;
  int max_parts = kDefaultMaxParts;
  Chromosome chromosome;
  Tally tally;
  std::vector<WavelengthState> wavelengths;
  std::vector<Fragment> fragments;
};

// Throws std::invalid_argument unless `chromosome` is a permutation of
// 0..demand_count-1.
void check_permutation(std::span<const int> chromosome, int demand_count);

// First-fit decode with greedy improvement. Per wavelength w:
//   grow   - place the first open demand (chromosome order) that fits w whole;
//   reuse  - place open demands whole on wavelengths 1..w where they fit with at
//            most one new ADM; repeat grow/reuse until nothing fits w whole;
//   divide - one pass of try_divide on w (divide modes);
//   cut    - one pass of try_cut on w against earlier wavelengths (cut modes).
// Demands that are zero in every pattern never enter the pool.
class Decoder {
 public:
  explicit Decoder(const GroomingContext& context) : ctx_(&context) {}

  GroomingSolution decode(std::span<const int> chromosome, SplitMode mode,
                          std::vector<DecodeEvent>* trace = nullptr) const;
  // Fitness only; skips building the solution record.
  Tally evaluate(std::span<const int> chromosome, SplitMode mode) const;

 private:
  void run(GroomingState& state, std::span<const int> chromosome, SplitMode mode,
           std::vector<DecodeEvent>* trace) const;

  const GroomingContext* ctx_;
};

GroomingSolution decode(std::span<const int> chromosome, const TrafficInstance& instance,
                        const TreeTopology& topology, SplitMode mode, int max_parts = kDefaultMaxParts);

}  // namespace treegroom
