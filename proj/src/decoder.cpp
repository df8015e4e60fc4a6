#include "treegroom/decoder.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>

namespace treegroom {

std::string to_string(SplitMode mode) {
  switch (mode) {
    case SplitMode::none: return "None";
    case SplitMode::cut_only: return "CutOnly";
    case SplitMode::divide_only: return "DivideOnly";
    case SplitMode::synthesized: return "Synthesized";
  }
  return "unknown";
}

SplitMode split_mode_from_string(const std::string& name) {
  std::string s;
  for (char c : name) {
    if (c != '_' && c != '-') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (s == "none") return SplitMode::none;
  if (s == "cutonly" || s == "cut") return SplitMode::cut_only;
  if (s == "divideonly" || s == "divide") return SplitMode::divide_only;
  if (s == "synthesized" || s == "synth") return SplitMode::synthesized;
  throw std::invalid_argument("unknown split mode '" + name + "'");
}

std::string to_string(DecodeStep step) {
  switch (step) {
    case DecodeStep::grow: return "grow";
    case DecodeStep::reuse: return "reuse";
    case DecodeStep::divide: return "divide";
    case DecodeStep::cut: return "cut";
  }
  return "unknown";
}

void check_permutation(std::span<const int> chromosome, int demand_count) {
  if (static_cast<int>(chromosome.size()) != demand_count) {
    throw std::invalid_argument("chromosome has " + std::to_string(chromosome.size()) + " genes, expected " +
                                std::to_string(demand_count));
  }
  std::vector<char> seen(demand_count, 0);
  for (int k : chromosome) {
    if (k < 0 || k >= demand_count) throw std::invalid_argument("gene out of range: " + std::to_string(k));
    if (seen[k]) throw std::invalid_argument("gene repeated: " + std::to_string(k));
    seen[k] = 1;
  }
}

void Decoder::run(GroomingState& state, std::span<const int> chromosome, SplitMode mode,
                  std::vector<DecodeEvent>* trace) const {
  const int count = ctx_->demand_count();
  check_permutation(chromosome, count);

  std::vector<int> order;
  order.reserve(count);
  for (int k : chromosome) {
    if (state.is_open(k)) order.push_back(k);
  }

  // no_fit[w][k] == version[k] records that k's current remaining amounts did
  // not fit w. Loads only grow, so the verdict holds until k is divided.
  std::vector<std::uint32_t> version(count, 1);
  std::vector<std::vector<std::uint32_t>> no_fit;
  auto fits = [&](int w, int k) {
    auto& stamp = no_fit[w][k];
    if (stamp == version[k]) return false;
    if (state.fits_whole(w, k)) return true;
    stamp = version[k];
    return false;
  };
  auto place = [&](DecodeStep step, int w, int k) {
    const int delta = state.adm_delta(w, k);
    if (trace) {
      const auto rem = state.remaining(k);
      trace->push_back({step, k, w, -1, -1, delta, std::vector<int>(rem.begin(), rem.end())});
    }
    state.place_whole(w, k);
  };

  while (state.open_count() > 0) {
    const int w = state.open_wavelength();
    no_fit.emplace_back(count, 0);

    for (;;) {
      std::erase_if(order, [&](int k) { return !state.is_open(k); });
      bool grown = false;
      for (int k : order) {
        if (fits(w, k)) {
          place(DecodeStep::grow, w, k);
          grown = true;
          break;
        }
      }
      if (!grown) break;

      // Reuse covers the current wavelength too, so zero-ADM fills of w happen
      // here as well.
      for (int k : order) {
        if (!state.is_open(k)) continue;
        // Wavelengths needing at most one new ADM drop at an endpoint; walk the
        // two ascending lists in merged order.
        const NodePair& ends = ctx_->demand(k).ends;
        const auto at_src = state.wavelengths_at(ends.source);
        const auto at_dst = state.wavelengths_at(ends.destination);
        std::size_t a = 0;
        std::size_t b = 0;
        while (a < at_src.size() || b < at_dst.size()) {
          int f;
          if (b == at_dst.size() || (a < at_src.size() && at_src[a] < at_dst[b])) {
            f = at_src[a++];
          } else if (a == at_src.size() || at_dst[b] < at_src[a]) {
            f = at_dst[b++];
          } else {
            f = at_src[a++];
            ++b;
          }
          if (f > w) break;
          if (fits(f, k)) {
            place(DecodeStep::reuse, f, k);
            break;
          }
        }
      }
    }

    if (uses_divide(mode)) {
      for (int k : order) {
        if (!state.is_open(k)) continue;
        const DivideResult r = state.try_divide(w, k);
        if (!r.applied()) continue;
        ++version[k];
        if (trace) trace->push_back({DecodeStep::divide, k, w, -1, -1, 0, r.part});
      }
    }
    if (uses_cut(mode)) {
      for (int k : order) {
        if (!state.is_open(k)) continue;
        std::vector<int> carried;
        if (trace) carried.assign(state.remaining(k).begin(), state.remaining(k).end());
        const CutResult r = state.try_cut(w, k);
        if (!r.applied()) continue;
        if (trace) trace->push_back({DecodeStep::cut, k, w, r.partner, r.cut_node, 0, std::move(carried)});
      }
    }
  }
}

GroomingSolution Decoder::decode(std::span<const int> chromosome, SplitMode mode,
                                 std::vector<DecodeEvent>* trace) const {
  GroomingState state(*ctx_);
  run(state, chromosome, mode, trace);
  GroomingSolution sol;
  sol.mode = mode;
  sol.max_parts = ctx_->max_parts();
  sol.chromosome.assign(chromosome.begin(), chromosome.end());
  sol.tally = state.tally();
  sol.wavelengths.assign(state.wavelengths().begin(), state.wavelengths().end());
  sol.fragments.assign(state.fragments().begin(), state.fragments().end());
  return sol;
}

Tally Decoder::evaluate(std::span<const int> chromosome, SplitMode mode) const {
  GroomingState state(*ctx_);
  run(state, chromosome, mode, nullptr);
  return state.tally();
}

GroomingSolution decode(std::span<const int> chromosome, const TrafficInstance& instance,
                        const TreeTopology& topology, SplitMode mode, int max_parts) {
  const GroomingContext ctx(topology, instance, max_parts);
  return Decoder(ctx).decode(chromosome, mode);
}

}  // namespace treegroom
