#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "treegroom/traffic.hpp"

using namespace treegroom;

TEST_CASE("demand index n=3 matches lexicographic pair order") {
  const DemandIndex idx(3);
  CHECK(idx.size() == 6);
  CHECK(idx.index(0, 1) == 0);
  CHECK(idx.index(0, 2) == 1);
  CHECK(idx.index(1, 0) == 2);
  CHECK(idx.index(1, 2) == 3);
  CHECK(idx.index(2, 0) == 4);
  CHECK(idx.index(2, 1) == 5);
}

TEST_CASE("demand index is a bijection for every n up to 15") {
  for (int n = 2; n <= 15; ++n) {
    const DemandIndex idx(n);
    const auto pairs = oracle::ordered_pairs(n);
    REQUIRE(idx.size() == static_cast<int>(pairs.size()));
    for (int k = 0; k < idx.size(); ++k) {
      const NodePair p = idx.pair(k);
      CHECK(p.source == pairs[k].first);
      CHECK(p.destination == pairs[k].second);
      CHECK(idx.index(p.source, p.destination) == k);
    }
  }
  CHECK(DemandIndex(15).size() == 210);
  CHECK_THROWS(DemandIndex(3).index(1, 1));
  CHECK_THROWS(DemandIndex(3).pair(6));
}

TEST_CASE("generated two-pattern instance") {
  const auto inst = generate_instance(3, 2, 16, {0, 15}, 5);
  CHECK(inst.pattern_count() == 2);
  for (int m = 0; m < 2; ++m) {
    for (int i = 0; i < 3; ++i) {
      CHECK(inst.demand(m, i, i) == 0);
      for (int j = 0; j < 3; ++j) {
        CHECK(inst.demand(m, i, j) >= 0);
        CHECK(inst.demand(m, i, j) <= 15);
      }
    }
  }
  REQUIRE(inst.generation.has_value());
  CHECK(inst.generation->seed == 5);
}

TEST_CASE("intermediate patterns lie between the extremes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_instance(6, 4, 16, {0, 15}, seed);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const int lo = std::min(inst.demand(0, i, j), inst.demand(3, i, j));
        const int hi = std::max(inst.demand(0, i, j), inst.demand(3, i, j));
        for (int m = 1; m < 3; ++m) {
          CHECK(inst.demand(m, i, j) >= lo);
          CHECK(inst.demand(m, i, j) <= hi);
        }
      }
    }
  }
}

TEST_CASE("extremes depend on n and seed only") {
  for (int n : {3, 7, 15}) {
    const auto a = generate_instance(n, 2, 16, {0, 15}, 9);
    const auto b = generate_instance(n, 4, 24, {0, 15}, 9);
    const auto c = generate_instance(n, 8, 96, {0, 15}, 9);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        CHECK(a.demand(0, i, j) == b.demand(0, i, j));
        CHECK(a.demand(1, i, j) == b.demand(3, i, j));
        CHECK(a.demand(0, i, j) == c.demand(0, i, j));
        CHECK(a.demand(1, i, j) == c.demand(7, i, j));
      }
    }
  }
}

TEST_CASE("generation is a pure function of its arguments") {
  CHECK(generate_instance(7, 4, 16, {0, 15}, 3) == generate_instance(7, 4, 16, {0, 15}, 3));
  CHECK_FALSE(generate_instance(7, 4, 16, {0, 15}, 3) == generate_instance(7, 4, 16, {0, 15}, 4));
}

TEST_CASE("generation rejects a range above g") {
  CHECK_THROWS_AS(generate_instance(3, 2, 10, {0, 15}, 1), TrafficError);
  CHECK_THROWS_AS(generate_instance(3, 0, 16, {0, 15}, 1), TrafficError);
}

TEST_CASE("instance file round trip") {
  const auto inst = generate_instance(5, 3, 24, {0, 15}, 42);
  const auto path = std::filesystem::temp_directory_path() / "treegroom_inst_roundtrip.json";
  save_instance(inst, path.string());
  const auto back = load_instance(path.string());
  CHECK(back == inst);
  REQUIRE(back.generation.has_value());
  CHECK(back.generation->seed == 42);
  std::filesystem::remove(path);
}

TEST_CASE("loading rejects invariant violations with their location") {
  auto j = to_json(generate_instance(3, 2, 16, {0, 15}, 1));
  SUBCASE("entry above g") {
    j["patterns"][1][0][2] = 17;
    try {
      instance_from_json(j);
      FAIL("accepted g+1");
    } catch (const TrafficError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("pattern 1") != std::string::npos);
      CHECK(msg.find("(0,2)") != std::string::npos);
    }
  }
  SUBCASE("nonzero diagonal") {
    j["patterns"][0][1][1] = 3;
    CHECK_THROWS_AS(instance_from_json(j), TrafficError);
  }
  SUBCASE("negative entry") {
    j["patterns"][0][1][0] = -1;
    CHECK_THROWS_AS(instance_from_json(j), TrafficError);
  }
  SUBCASE("wrong shape") {
    j["patterns"][0].erase(2);
    CHECK_THROWS_AS(instance_from_json(j), TrafficError);
  }
  SUBCASE("missing field") {
    j.erase("g");
    CHECK_THROWS_AS(instance_from_json(j), TrafficError);
  }
}

TEST_CASE("all-zero demands are detected per index") {
  TrafficInstance inst(3, 2, 16);
  inst.set_demand(1, 2, 0, 4);
  for (int k = 0; k < 6; ++k) CHECK(inst.is_all_zero(k) == (k != 4));
  CHECK(inst.total_demand(0) == 0);
  CHECK(inst.total_demand(1) == 4);
}
