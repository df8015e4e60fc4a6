#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "treegroom/decoder.hpp"

namespace treegroom {

using Fitness = Tally;

// Fewer ADMs is better; ties go to fewer wavelengths.
inline std::strong_ordering compare_fitness(const Fitness& a, const Fitness& b) {
  if (auto c = a.adms <=> b.adms; c != 0) return c;
  return a.wavelengths <=> b.wavelengths;
}

// Child keeps parent_a's genes at [cut1, cut2); remaining positions are filled
// left to right with parent_b's genes in parent_b order, skipping genes already
// present. Throws std::invalid_argument if the parents are not permutations of
// the same index set or the cuts are out of order.
Chromosome order_crossover(std::span<const int> parent_a, std::span<const int> parent_b, std::size_t cut1,
                           std::size_t cut2);

// Reverses [p1, p2).
Chromosome inversion_mutation(std::span<const int> chromosome, std::size_t p1, std::size_t p2);

using CrossoverOperator =
    std::function<Chromosome(std::span<const int>, std::span<const int>, std::size_t, std::size_t)>;

struct GaParams {
  int mu = 200;
  int lambda_offspring = 200;
  double pc = 0.6;
  double pm = 0.4;
  int generations = 500;
  std::uint64_t seed = 1;
  SplitMode mode = SplitMode::none;
  CrossoverOperator crossover = order_crossover;

  void validate() const;
};

struct GenerationRecord {
  int generation = 0;
  Fitness best;
  std::uint64_t evaluations = 0;  // cumulative decodes
};

struct EvolutionResult {
  GroomingSolution best;
  std::vector<GenerationRecord> history;          // generation 0 is the initial population
  std::vector<Fitness> final_population;          // sorted best first
  std::vector<std::vector<Fitness>> population_history;  // filled when requested
  int mu_used = 0;
  std::vector<std::string> warnings;
};

struct EvolveOptions {
  bool record_populations = false;
  std::size_t cache_limit = 1u << 16;
};

// (mu + lambda) evolution: mu distinct random permutations, lambda offspring per
// generation from two distinct uniform parents (crossover with probability pc,
// otherwise a clone of the first parent, then inversion with probability pm),
// truncation to the mu best with older individuals winning exact ties.
EvolutionResult evolve(const GroomingContext& context, const GaParams& params, const EvolveOptions& options = {});

}  // namespace treegroom
