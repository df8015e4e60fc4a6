#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "treegroom/evolution.hpp"

using namespace treegroom;

namespace {

bool is_permutation_of(const Chromosome& c, std::vector<int> genes) {
  Chromosome s = c;
  std::sort(s.begin(), s.end());
  std::sort(genes.begin(), genes.end());
  return s == genes;
}

GaParams small(SplitMode mode, std::uint64_t seed) {
  GaParams p;
  p.mu = 20;
  p.lambda_offspring = 20;
  p.generations = 30;
  p.seed = seed;
  p.mode = mode;
  return p;
}

}  // namespace

TEST_CASE("order crossover example") {
  const std::vector<int> a{1, 2, 3, 4, 5};
  const std::vector<int> b{5, 4, 3, 2, 1};
  CHECK(order_crossover(a, b, 1, 3) == std::vector<int>{5, 2, 3, 4, 1});
  CHECK(order_crossover(a, a, 1, 3) == a);
  CHECK(order_crossover(a, b, 0, 5) == a);
  CHECK_THROWS_AS(order_crossover(a, b, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(order_crossover(a, std::vector<int>{1, 2, 3, 4, 4}, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(order_crossover(a, std::vector<int>{1, 2, 3, 4}, 1, 3), std::invalid_argument);
}

TEST_CASE("order crossover preserves permutations") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const auto a = oracle::random_permutation(n, rng);
    const auto b = oracle::random_permutation(n, rng);
    std::size_t c1 = rng() % n;
    std::size_t c2 = c1 + 1 + rng() % (n - c1);
    const auto child = order_crossover(a, b, c1, c2);
    CHECK(is_permutation_of(child, a));
    for (std::size_t p = c1; p < c2; ++p) CHECK(child[p] == a[p]);
    // Outside the slice, the relative order of b is kept.
    std::vector<int> outside;
    for (std::size_t p = 0; p < child.size(); ++p) {
      if (p < c1 || p >= c2) outside.push_back(child[p]);
    }
    std::vector<int> expect;
    const std::set<int> kept(a.begin() + c1, a.begin() + c2);
    for (int gene : b) {
      if (!kept.count(gene)) expect.push_back(gene);
    }
    CHECK(outside == expect);
  }
}

TEST_CASE("inversion mutation examples") {
  const std::vector<int> c{1, 2, 3, 4, 5};
  CHECK(inversion_mutation(c, 1, 4) == std::vector<int>{1, 4, 3, 2, 5});
  CHECK(inversion_mutation(c, 2, 3) == c);
  CHECK(inversion_mutation(c, 0, 5) == std::vector<int>{5, 4, 3, 2, 1});
  CHECK_THROWS_AS(inversion_mutation(c, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(inversion_mutation(c, 0, 6), std::invalid_argument);

  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 20);
    const auto x = oracle::random_permutation(n, rng);
    std::size_t p1 = rng() % n;
    std::size_t p2 = p1 + 1 + rng() % (n - p1);
    const auto y = inversion_mutation(x, p1, p2);
    CHECK(is_permutation_of(y, x));
    CHECK(inversion_mutation(y, p1, p2) == x);
  }
}

TEST_CASE("fitness comparison") {
  CHECK(compare_fitness({5, 3}, {6, 1}) < 0);
  CHECK(compare_fitness({5, 3}, {5, 2}) > 0);
  CHECK(compare_fitness({5, 3}, {5, 3}) == 0);
}

TEST_CASE("parameter validation") {
  GaParams p;
  p.pc = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.mu = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.generations = -1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("evolution finds the all-tens optimum") {
  const GroomingContext ctx(TreeTopology::star(3), oracle::star3_all_tens());
  for (SplitMode mode : kAllModes) {
    const auto r = evolve(ctx, small(mode, 3));
    CHECK(r.best.tally == oracle::brute_force_best(ctx, mode));
    CHECK(r.history.size() == 31);
  }
}

TEST_CASE("without variation the population never changes") {
  const GroomingContext ctx(TreeTopology::complete_binary(7), generate_instance(7, 2, 16, {0, 15}, 4));
  GaParams p = small(SplitMode::synthesized, 9);
  p.pc = 0.0;
  p.pm = 0.0;
  EvolveOptions opt;
  opt.record_populations = true;
  const auto r = evolve(ctx, p, opt);
  REQUIRE(r.population_history.size() == 31);
  for (std::size_t gen = 1; gen < r.population_history.size(); ++gen) {
    for (std::size_t i = 0; i < r.population_history[gen].size(); ++i) {
      CHECK(compare_fitness(r.population_history[gen][i], r.population_history[gen - 1][i]) <= 0);
    }
    CHECK(r.history[gen].best == r.history[0].best);
    // Clones hit the cache; no new chromosome is ever decoded.
    CHECK(r.history[gen].evaluations == r.history[0].evaluations);
  }
}

TEST_CASE("elitism, reproducibility and cache transparency") {
  const GroomingContext ctx(TreeTopology::star(8), generate_instance(8, 4, 24, {0, 15}, 12));
  const GaParams p = small(SplitMode::synthesized, 77);
  EvolveOptions opt;
  opt.record_populations = true;
  const auto a = evolve(ctx, p, opt);
  for (std::size_t gen = 1; gen < a.history.size(); ++gen) {
    CHECK(compare_fitness(a.history[gen].best, a.history[gen - 1].best) <= 0);
    CHECK(a.history[gen].evaluations >= a.history[gen - 1].evaluations);
  }
  const auto b = evolve(ctx, p, opt);
  CHECK(a.best.chromosome == b.best.chromosome);
  CHECK(a.best.fragments == b.best.fragments);
  CHECK(a.population_history == b.population_history);

  EvolveOptions nocache = opt;
  nocache.cache_limit = 0;
  const auto c = evolve(ctx, p, nocache);
  CHECK(c.best.chromosome == a.best.chromosome);
  CHECK(c.population_history == a.population_history);

  GaParams other = p;
  other.seed = 78;
  const auto d = evolve(ctx, other, opt);
  CHECK(is_permutation_of(d.best.chromosome, a.best.chromosome));
  CHECK(d.best.tally == Decoder(ctx).evaluate(d.best.chromosome, p.mode));
}

TEST_CASE("mu shrinks when there are too few permutations") {
  TrafficInstance inst(2, 1, 16);
  inst.set_demand(0, 0, 1, 3);
  const GroomingContext ctx(TreeTopology::star(2), inst);
  GaParams p = small(SplitMode::none, 1);
  const auto r = evolve(ctx, p);
  CHECK(r.mu_used == 2);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("mu reduced") != std::string::npos);
  CHECK(r.best.tally == Tally{2, 1});
  CHECK(r.final_population.size() == 2);
}
