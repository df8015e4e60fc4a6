#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "treegroom/solution_io.hpp"

using namespace treegroom;

namespace {

bool same(const SolutionRecord& a, const SolutionRecord& b) { return to_json(a) == to_json(b); }

}  // namespace

TEST_CASE("records survive a file round trip") {
  std::mt19937_64 rng(6);
  for (SplitMode mode : kAllModes) {
    const auto topo = TreeTopology::complete_binary(9);
    const GroomingContext ctx(topo, generate_instance(9, 3, 24, {0, 15}, 2));
    const auto c = oracle::random_permutation(ctx.demand_count(), rng);
    const auto rec = to_record(Decoder(ctx).decode(c, mode), ctx);
    const auto path = std::filesystem::temp_directory_path() / "treegroom_solution_roundtrip.json";
    save_solution(rec, path.string());
    const auto back = load_solution(path.string());
    std::filesystem::remove(path);
    CHECK(same(rec, back));
    CHECK(back.mode == to_string(mode));
    CHECK(back.chromosome == c);
    CHECK(validate(back, ctx.instance(), topo).passed());
  }
}

TEST_CASE("record uses one-based wavelength ids and endpoint-named links") {
  const GroomingContext ctx(TreeTopology::star(3), oracle::star3_all_tens());
  const auto good = oracle::chromosome_of(3, {{1, 2}, {2, 0}, {0, 1}, {2, 1}, {1, 0}, {0, 2}});
  const auto rec = to_record(Decoder(ctx).decode(good, SplitMode::none), ctx);
  REQUIRE(rec.wavelengths.size() == 2);
  CHECK(rec.wavelengths[0].id == 1);
  CHECK(rec.wavelengths[1].id == 2);
  CHECK(rec.wavelengths[0].drop_nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(rec.adms == 6);
  CHECK(rec.fragments.front().source == 1);
  CHECK(rec.fragments.front().destination == 2);
  CHECK(rec.fragments.front().wavelength == 1);
  bool saw = false;
  for (const auto& l : rec.wavelengths[0].link_loads) {
    if (l.from == 1 && l.to == 0) {
      CHECK(l.loads == std::vector<int>{10});
      saw = true;
    }
  }
  CHECK(saw);
}

TEST_CASE("malformed records are rejected") {
  const GroomingContext ctx(TreeTopology::star(3), oracle::star3_all_tens());
  auto j = to_json(to_record(Decoder(ctx).decode(std::vector<int>{0, 1, 2, 3, 4, 5}, SplitMode::none), ctx));
  SUBCASE("unknown kind") {
    j["fragments"][0]["kind"] = "slice";
    CHECK_THROWS(record_from_json(j));
  }
  SUBCASE("missing fragments") {
    j.erase("fragments");
    CHECK_THROWS(record_from_json(j));
  }
  CHECK_THROWS(fragment_kind_from_string("slice"));
  CHECK_THROWS(segment_side_from_string("middle"));
}
