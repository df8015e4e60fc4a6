#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "treegroom_cli_test";

int cli(const std::string& args) {
  const std::string cmd = std::string(TREEGROOM_CLI) + " " + args + " >" + (kDir / "stdout.txt").string() + " 2>" +
                          (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string at(const std::string& name) { return (kDir / name).string(); }

struct Fresh {
  Fresh() {
    fs::remove_all(kDir);
    fs::create_directories(kDir);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fresh, "generate, decode, validate") {
  REQUIRE(cli("gen --n 7 --m 2 --g 16 --seed 3 --out " + at("inst.json")) == 0);
  std::ofstream(at("chrom.json")) << "[" << [] {
    std::string s;
    for (int k = 0; k < 42; ++k) s += (k ? "," : "") + std::to_string(41 - k);
    return s;
  }() << "]";
  CHECK(cli("decode --instance " + at("inst.json") + " --topology binary --mode Synthesized --chromosome " +
            at("chrom.json") + " --out " + at("sol.json") + " --trace " + at("trace.json")) == 0);
  CHECK(cli("validate --instance " + at("inst.json") + " --topology binary --solution " + at("sol.json")) == 0);
  CHECK(slurp(kDir / "stdout.txt").find("PASS adm_recount") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(kDir / "trace.json")).is_array());

  auto sol = nlohmann::json::parse(slurp(kDir / "sol.json"));
  sol["adms"] = sol["adms"].get<int>() + 1;
  std::ofstream(at("bad.json")) << sol.dump();
  CHECK(cli("validate --instance " + at("inst.json") + " --topology binary --solution " + at("bad.json")) == 1);
  CHECK(slurp(kDir / "stdout.txt").find("FAIL adm_recount") != std::string::npos);
}

TEST_CASE_FIXTURE(Fresh, "bounds, oracle and run") {
  REQUIRE(cli("gen --n 3 --m 1 --g 16 --seed 4 --out " + at("inst.json")) == 0);
  CHECK(cli("bounds --instance " + at("inst.json") + " --topology star") == 0);
  CHECK(slurp(kDir / "stdout.txt").find("W_min") != std::string::npos);
  CHECK(cli("oracle --instance " + at("inst.json") + " --topology star --mode CutOnly") == 0);
  const auto o = nlohmann::json::parse(slurp(kDir / "stdout.txt"));
  CHECK(o["permutations"] == 720);
  CHECK(cli("run --instance " + at("inst.json") + " --topology star --mode CutOnly --mu 20 --lambda 20 --gens 30 --out " +
            at("best.json")) == 0);
  CHECK(nlohmann::json::parse(slurp(kDir / "best.json"))["adms"] == o["adms"]);
}

TEST_CASE_FIXTURE(Fresh, "sweep and plot") {
  std::ofstream(at("cfg.json")) << R"({"grids":[{"topology":"star","n":[4,5],"M":[1],"g":[16]}],
    "ga":{"mu":6,"lambda":6,"generations":4},"runs_per_cell":2})";
  REQUIRE(cli("sweep --config " + at("cfg.json") + " --quiet --out " + at("out")) == 0);
  CHECK(fs::exists(kDir / "out" / "results.csv"));
  CHECK(fs::exists(kDir / "out" / "summary.csv"));
  CHECK(cli("plot --results " + at("out/results.csv") + " --topology star --m 1 --g 16 --out " + at("p.csv")) == 0);
  CHECK(slurp(kDir / "p.csv").starts_with("n,None,CutOnly,DivideOnly,Synthesized,lower_bound,upper_bound\n4,"));
  CHECK(cli("plot --results " + at("out/results.csv") + " --figure star --m 1 --g 16 --out " + at("")) == 0);
}

TEST_CASE_FIXTURE(Fresh, "configuration errors exit with 2") {
  CHECK(cli("") == 2);
  CHECK(cli("decode --instance " + at("missing.json") + " --chromosome " + at("missing.json")) == 2);
  CHECK(cli("gen --n 3 --g 10") == 2);
  std::ofstream(at("cfg.json")) << R"({"runs_per_cell": 0})";
  CHECK(cli("sweep --config " + at("cfg.json")) == 2);
  CHECK(cli("sweep --frobnicate") == 2);
  REQUIRE(cli("gen --n 3 --m 1 --g 16 --out " + at("inst.json")) == 0);
  CHECK(cli("oracle --instance " + at("inst.json") + " --max-perms 10") == 2);
}

TEST_CASE_FIXTURE(Fresh, "environment seed is honored and logged") {
  REQUIRE(::setenv("TREEGROOM_SEED", "77", 1) == 0);
  CHECK(cli("sweep --print-config") == 0);
  ::unsetenv("TREEGROOM_SEED");
  CHECK(nlohmann::json::parse(slurp(kDir / "stdout.txt"))["seed"] == 77);
  CHECK(slurp(kDir / "stderr.txt").find("TREEGROOM_SEED") != std::string::npos);
}
