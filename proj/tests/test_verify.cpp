#include <doctest.h>

#include "oracles.hpp"
#include "treegroom/evolution.hpp"
#include "treegroom/verify.hpp"

using namespace treegroom;

namespace {

struct Case {
  GroomingContext ctx;
  SolutionRecord record;
};

Case decoded(const TreeTopology& topo, const TrafficInstance& inst, SplitMode mode, std::uint64_t seed) {
  GroomingContext ctx(topo, inst);
  std::mt19937_64 rng(seed);
  const auto c = oracle::random_permutation(ctx.demand_count(), rng);
  auto rec = to_record(Decoder(ctx).decode(c, mode), ctx);
  return {std::move(ctx), std::move(rec)};
}

bool failed(const ValidationReport& r, const char* name) {
  const CheckResult* c = r.find(name);
  REQUIRE(c != nullptr);
  return !c->passed;
}

}  // namespace

TEST_CASE("decoder output passes every check") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const auto topo = rep % 2 ? TreeTopology::star(n) : TreeTopology::complete_binary(n);
    const auto inst = generate_instance(n, 1 + static_cast<int>(rng() % 4), 16, {0, 15}, rng());
    for (SplitMode mode : kAllModes) {
      const auto c = decoded(topo, inst, mode, rng());
      const auto r = validate(c.record, inst, topo);
      INFO(r.summary());
      CHECK(r.passed());
      CHECK(r.checks.size() == 10);
    }
  }
}

TEST_CASE("an overloaded link is reported with its location") {
  const auto topo = TreeTopology::complete_binary(7);
  const auto inst = generate_instance(7, 2, 16, {0, 15}, 5);
  auto c = decoded(topo, inst, SplitMode::none, 1);
  REQUIRE(!c.record.wavelengths.empty());
  auto& w = c.record.wavelengths[0];
  REQUIRE(!w.link_loads.empty());
  auto& l = w.link_loads[0];
  l.loads[1] = 17;
  const auto r = validate(c.record, inst, topo);
  CHECK_FALSE(r.passed());
  CHECK(failed(r, check::kLinkCapacity));
  const std::string detail = r.find(check::kLinkCapacity)->detail;
  CHECK(detail.find("wavelength " + std::to_string(w.id)) != std::string::npos);
  CHECK(detail.find("pattern 1") != std::string::npos);
  CHECK(detail.find("link " + std::to_string(l.from) + "->" + std::to_string(l.to)) != std::string::npos);
}

TEST_CASE("moving one pattern of a fragment breaks strict nonblocking") {
  const auto topo = TreeTopology::star(6);
  const auto inst = generate_instance(6, 3, 16, {1, 15}, 8);
  auto c = decoded(topo, inst, SplitMode::none, 2);
  REQUIRE(c.record.wavelengths.size() >= 2);
  // Shift pattern 2 of a fragment on the first wavelength onto another one.
  RecordedFragment& f = c.record.fragments[0];
  RecordedFragment moved = f;
  for (int m = 0; m < 3; ++m) moved.amounts[m] = m == 2 ? f.amounts[2] : 0;
  f.amounts[2] = 0;
  moved.wavelength = f.wavelength == 1 ? 2 : 1;
  c.record.fragments.push_back(moved);
  const auto r = validate(c.record, inst, topo);
  CHECK(failed(r, check::kStrictNonblocking));
  CHECK_FALSE(failed(r, check::kConservation));
}

TEST_CASE("too many parts is a shape violation") {
  const auto topo = TreeTopology::star(5);
  TrafficInstance inst(5, 1, 16);
  inst.set_demand(0, 1, 2, 10);
  auto c = decoded(topo, inst, SplitMode::divide_only, 1);
  REQUIRE(c.record.fragments.size() == 1);
  const RecordedFragment whole = c.record.fragments[0];
  c.record.fragments.clear();
  for (int p = 0; p < 5; ++p) {
    RecordedFragment part = whole;
    part.kind = FragmentKind::part;
    part.ordinal = p;
    part.amounts = {2};
    c.record.fragments.push_back(part);
  }
  auto r = validate(c.record, inst, topo);
  CHECK(failed(r, check::kFragmentShape));
  CHECK(r.find(check::kFragmentShape)->detail.find("max_parts") != std::string::npos);
  CHECK_FALSE(failed(r, check::kConservation));

  c.record.fragments.resize(4);
  c.record.fragments[3].amounts = {4};
  r = validate(c.record, inst, topo);
  CHECK_FALSE(failed(r, check::kFragmentShape));
}

TEST_CASE("a cut single-link demand is a shape violation") {
  const auto topo = TreeTopology::complete_binary(7);
  TrafficInstance inst(7, 1, 16);
  inst.set_demand(0, 1, 0, 6);
  auto c = decoded(topo, inst, SplitMode::none, 1);
  REQUIRE(c.record.fragments.size() == 1);
  RecordedFragment a = c.record.fragments[0];
  a.kind = FragmentKind::segment;
  a.side = SegmentSide::source_side;
  a.cut_node = 0;
  RecordedFragment b = a;
  b.side = SegmentSide::destination_side;
  c.record.fragments = {a, b};
  const auto r = validate(c.record, inst, topo);
  CHECK(failed(r, check::kFragmentShape));
}

TEST_CASE("wrong counts and missing traffic are caught") {
  const auto topo = TreeTopology::star(5);
  const auto inst = generate_instance(5, 2, 16, {1, 15}, 3);
  auto c = decoded(topo, inst, SplitMode::synthesized, 4);
  SUBCASE("ADM count") {
    c.record.adms -= 1;
    CHECK(failed(validate(c.record, inst, topo), check::kAdmRecount));
  }
  SUBCASE("dropped fragment") {
    c.record.fragments.pop_back();
    const auto r = validate(c.record, inst, topo);
    CHECK(failed(r, check::kConservation));
  }
  SUBCASE("header") {
    c.record.granularity = 24;
    CHECK(failed(validate(c.record, inst, topo), check::kHeader));
  }
}

TEST_CASE("exhaustive oracle values") {
  const GroomingContext tens(TreeTopology::star(3), oracle::star3_all_tens());
  const auto r = exhaustive_oracle(tens, SplitMode::none);
  CHECK(r.best == Tally{6, 2});
  CHECK(r.permutations == 720);
  CHECK(Decoder(tens).evaluate(r.witness, SplitMode::none) == r.best);

  const GroomingContext zero(TreeTopology::star(3), TrafficInstance(3, 1, 16));
  CHECK(exhaustive_oracle(zero, SplitMode::synthesized).best == Tally{0, 0});

  TrafficInstance single(3, 1, 16);
  single.set_demand(0, 1, 2, 16);
  const GroomingContext one(TreeTopology::star(3), single);
  CHECK(exhaustive_oracle(one, SplitMode::cut_only).best == Tally{2, 1});

  const GroomingContext big(TreeTopology::star(4), generate_instance(4, 1, 16, {0, 15}, 1));
  CHECK_THROWS_AS(exhaustive_oracle(big, SplitMode::none), std::invalid_argument);
}

TEST_CASE("oracle is never beaten by a single decode") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const GroomingContext ctx(TreeTopology::star(3), generate_instance(3, 1 + rep % 3, 16, {0, 15}, rng()));
    for (SplitMode mode : kAllModes) {
      const auto best = exhaustive_oracle(ctx, mode, kDefaultMaxPermutations, false).best;
      CHECK(best == oracle::brute_force_best(ctx, mode));
      for (int t = 0; t < 10; ++t) {
        const auto c = oracle::random_permutation(6, rng);
        CHECK(compare_fitness(best, Decoder(ctx).evaluate(c, mode)) <= 0);
      }
    }
  }
}

TEST_CASE("bfs path") {
  const auto topo = TreeTopology::complete_binary(7);
  CHECK(bfs_path(topo, 3, 5) == std::vector<NodeId>{3, 1, 0, 2, 5});
  CHECK(bfs_path(topo, 4, 3) == std::vector<NodeId>{4, 1, 3});
}
