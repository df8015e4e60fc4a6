#include "treegroom/evolution.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace treegroom {

namespace {

struct ChromosomeHash {
  std::size_t operator()(const Chromosome& c) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int gene : c) {
      h ^= static_cast<std::uint64_t>(gene) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct Individual {
  Chromosome genes;
  Fitness fitness;
  std::uint64_t created = 0;
};

// Two distinct cut points in [0, size], returned in increasing order.
std::pair<std::size_t, std::size_t> random_cuts(std::mt19937_64& rng, std::size_t size) {
  std::uniform_int_distribution<std::size_t> first(0, size);
  std::uniform_int_distribution<std::size_t> second(0, size - 1);
  std::size_t a = first(rng);
  std::size_t b = second(rng);
  if (b >= a) ++b;
  return {std::min(a, b), std::max(a, b)};
}

std::uint64_t factorial_capped(int n, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<std::uint64_t>(i);
    if (f >= cap) return cap;
  }
  return f;
}

}  // namespace

Chromosome order_crossover(std::span<const int> parent_a, std::span<const int> parent_b, std::size_t cut1,
                           std::size_t cut2) {
  const std::size_t n = parent_a.size();
  if (parent_b.size() != n) throw std::invalid_argument("crossover parents differ in length");
  if (cut1 >= cut2 || cut2 > n) throw std::invalid_argument("crossover cuts must satisfy cut1 < cut2 <= N");
  std::vector<int> sa(parent_a.begin(), parent_a.end());
  std::vector<int> sb(parent_b.begin(), parent_b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb || std::adjacent_find(sa.begin(), sa.end()) != sa.end()) {
    throw std::invalid_argument("crossover parents are not permutations of the same index set");
  }

  Chromosome child(n);
  std::set<int> kept(parent_a.begin() + static_cast<std::ptrdiff_t>(cut1),
                     parent_a.begin() + static_cast<std::ptrdiff_t>(cut2));
  std::copy(parent_a.begin() + static_cast<std::ptrdiff_t>(cut1),
            parent_a.begin() + static_cast<std::ptrdiff_t>(cut2), child.begin() + static_cast<std::ptrdiff_t>(cut1));
  std::size_t pos = 0;
  for (int gene : parent_b) {
    if (kept.count(gene)) continue;
    if (pos == cut1) pos = cut2;
    child[pos++] = gene;
  }
  return child;
}

Chromosome inversion_mutation(std::span<const int> chromosome, std::size_t p1, std::size_t p2) {
  if (p1 >= p2 || p2 > chromosome.size()) throw std::invalid_argument("inversion points must satisfy p1 < p2 <= N");
  Chromosome out(chromosome.begin(), chromosome.end());
  std::reverse(out.begin() + static_cast<std::ptrdiff_t>(p1), out.begin() + static_cast<std::ptrdiff_t>(p2));
  return out;
}

void GaParams::validate() const {
  if (mu < 1) throw std::invalid_argument("mu must be at least 1");
  if (lambda_offspring < 1) throw std::invalid_argument("lambda must be at least 1");
  if (!(pc >= 0.0 && pc <= 1.0)) throw std::invalid_argument("pc must lie in [0, 1]");
  if (!(pm >= 0.0 && pm <= 1.0)) throw std::invalid_argument("pm must lie in [0, 1]");
  if (generations < 0) throw std::invalid_argument("generations must be non-negative");
  if (!crossover) throw std::invalid_argument("crossover operator missing");
}

EvolutionResult evolve(const GroomingContext& context, const GaParams& params, const EvolveOptions& options) {
  params.validate();
  const int count = context.demand_count();
  const Decoder decoder(context);
  std::mt19937_64 rng(params.seed);
  EvolutionResult result;

  std::unordered_map<Chromosome, Fitness, ChromosomeHash> cache;
  std::uint64_t evaluations = 0;
  auto evaluate = [&](const Chromosome& c) {
    if (auto it = cache.find(c); it != cache.end()) return it->second;
    const Fitness f = decoder.evaluate(c, params.mode);
    ++evaluations;
    if (cache.size() >= options.cache_limit) cache.clear();
    cache.emplace(c, f);
    return f;
  };

  int mu = params.mu;
  const std::uint64_t distinct = factorial_capped(count, static_cast<std::uint64_t>(mu));
  if (distinct < static_cast<std::uint64_t>(mu)) {
    mu = static_cast<int>(distinct);
    result.warnings.push_back("only " + std::to_string(distinct) + " distinct chromosomes exist; mu reduced from " +
                              std::to_string(params.mu) + " to " + std::to_string(mu));
  }
  result.mu_used = mu;

  std::uint64_t created = 0;
  std::vector<Individual> population;
  population.reserve(static_cast<std::size_t>(mu) + params.lambda_offspring);
  {
    std::set<Chromosome> seen;
    Chromosome base(count);
    std::iota(base.begin(), base.end(), 0);
    while (static_cast<int>(population.size()) < mu) {
      Chromosome c = base;
      std::shuffle(c.begin(), c.end(), rng);
      if (!seen.insert(c).second) continue;
      const Fitness f = evaluate(c);
      population.push_back({std::move(c), f, created++});
    }
  }

  auto by_rank = [](const Individual& a, const Individual& b) {
    if (auto c = compare_fitness(a.fitness, b.fitness); c != 0) return c < 0;
    return a.created < b.created;
  };
  std::sort(population.begin(), population.end(), by_rank);

  auto record = [&](int generation) {
    result.history.push_back({generation, population.front().fitness, evaluations});
    if (options.record_populations) {
      std::vector<Fitness> fs;
      for (const auto& ind : population) fs.push_back(ind.fitness);
      result.population_history.push_back(std::move(fs));
    }
  };
  record(0);

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, mu - 1);
  std::uniform_int_distribution<int> pick_other(0, std::max(0, mu - 2));
  for (int gen = 1; gen <= params.generations; ++gen) {
    for (int o = 0; o < params.lambda_offspring; ++o) {
      const int a = pick(rng);
      int b = a;
      if (mu > 1) {
        b = pick_other(rng);
        if (b >= a) ++b;
      }
      Chromosome child;
      if (count >= 2 && coin(rng) < params.pc) {
        const auto [c1, c2] = random_cuts(rng, static_cast<std::size_t>(count));
        child = params.crossover(population[a].genes, population[b].genes, c1, c2);
      } else {
        child = population[a].genes;
      }
      if (count >= 2 && coin(rng) < params.pm) {
        const auto [p1, p2] = random_cuts(rng, static_cast<std::size_t>(count));
        child = inversion_mutation(child, p1, p2);
      }
      const Fitness f = evaluate(child);
      population.push_back({std::move(child), f, created++});
    }
    // Parents were created before any offspring, so the creation-index
    // tie-break also prefers parents.
    std::stable_sort(population.begin(), population.end(), by_rank);
    population.resize(static_cast<std::size_t>(mu));
    record(gen);
  }

  for (const auto& ind : population) result.final_population.push_back(ind.fitness);
  result.best = decoder.decode(population.front().genes, params.mode);
  return result;
}

}  // namespace treegroom
