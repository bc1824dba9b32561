#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tspcp/instances.hpp"
#include "tspcp/stats.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = TSPCP_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("tspcp_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(const std::string& args) {
  const int status = std::system((kBin + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("gap arithmetic matches the published rounding") {
  CHECK(tspcp::gap(24046, 23866) == doctest::Approx(0.754).epsilon(1e-3));
  CHECK(tspcp::gap(12427, 13753) == doctest::Approx(-9.64).epsilon(1e-3));
  CHECK(tspcp::gap(5, 5) == 0.0);
  CHECK(tspcp::gap_sigma(1.4, 140.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(tspcp::gap(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("gen writes a parseable instance") {
  TempDir tmp;
  const auto path = tmp.file("mesh.tspcp");
  REQUIRE(run("gen --family mesh --n 15 --spacing 10 --seed 3 --out " + path) == 0);
  const auto inst = tspcp::parse_instance(slurp(path));
  CHECK(inst.points.size() == 15);
  CHECK(inst.type == "TSPCP");

  const auto sd = tmp.file("sd.tspsd");
  REQUIRE(run("gen --family square --n 9 --spacing 5 --seed 3 --delete-density 2 --out " + sd) == 0);
  const auto sdinst = tspcp::parse_instance(slurp(sd));
  CHECK(sdinst.type == "TSPSD");
  CHECK(sdinst.deletions.size() == 9 * 2);
}

TEST_CASE("solve is byte-identical under an iteration cap") {
  TempDir tmp;
  const auto inst = tmp.file("inst.tspsd");
  REQUIRE(run("gen --family mesh --n 12 --spacing 8 --seed 5 --delete-density 3 --out " + inst) == 0);
  const auto out1 = tmp.file("a.sol");
  const auto out2 = tmp.file("b.sol");
  const std::string cmd = "solve tspsd " + inst +
                          " --runs 3 --seed 7 --max-iters 25 --out ";
  REQUIRE(run(cmd + out1) == 0);
  REQUIRE(run(cmd + out2) == 0);
  const auto a = slurp(out1);
  CHECK(a == slurp(out2));
  const auto records = tspcp::parse_solutions(a);
  REQUIRE(records.size() == 3);
  for (const auto& r : records) {
    CHECK(r.valid);
    CHECK(r.wall_ms == 0);  // deterministic mode does not record time
  }
}

TEST_CASE("validate passes solver output and rejects tampered tours") {
  TempDir tmp;
  const auto inst = tmp.file("inst.tspsd");
  REQUIRE(run("gen --family mesh --n 10 --spacing 9 --seed 11 --delete-density 3 --out " + inst) == 0);
  const auto sol = tmp.file("good.sol");
  REQUIRE(run("solve tspsd " + inst + " --seed 2 --max-iters 40 --out " + sol) == 0);
  REQUIRE(run("validate " + inst + " " + sol) == 0);

  // Tamper: swap two interior nodes; either conformance or the recorded
  // cost must now fail.
  auto records = tspcp::parse_solutions(slurp(sol));
  REQUIRE(records.size() == 1);
  std::swap(records[0].tour[2], records[0].tour[5]);
  const auto bad = tmp.file("bad.sol");
  spit(bad, tspcp::write_solutions(records));
  const int status =
      std::system((kBin + " validate " + inst + " " + bad + " > " +
                   tmp.file("vout.txt") + " 2>&1")
                      .c_str());
  CHECK(WEXITSTATUS(status) == 4);
  const auto message = slurp(tmp.file("vout.txt"));
  CHECK(message.find("FAIL") != std::string::npos);
}

TEST_CASE("validate names the offending edge and deleting node") {
  TempDir tmp;
  // Hand-built instance: f(1) deletes the edge (2 -> 3).
  spit(tmp.file("t.tspsd"),
       "NAME: t\nTYPE: TSPSD\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
       "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nDELETE_SECTION\n"
       "1 : (2 3)\nEOF\n");
  tspcp::SolutionRecord rec;
  rec.instance = "t";
  rec.variant = "tspsd";
  rec.tour = {0, 1, 2};  // traverses (2 -> 3) after processing node 1
  rec.cost = 1.0 + std::sqrt(2.0) + 1.0;
  spit(tmp.file("t.sol"), tspcp::write_solutions({rec}));
  const int status =
      std::system((kBin + " validate " + tmp.file("t.tspsd") + " " +
                   tmp.file("t.sol") + " > " + tmp.file("out.txt") + " 2>&1")
                      .c_str());
  CHECK(WEXITSTATUS(status) == 4);
  const auto message = slurp(tmp.file("out.txt"));
  CHECK(message.find("(2 -> 3)") != std::string::npos);
  CHECK(message.find("deleted by node 1") != std::string::npos);
}

TEST_CASE("tspcp solve output validates and renders") {
  TempDir tmp;
  const auto inst = tmp.file("inst.tspcp");
  REQUIRE(run("gen --family mesh --n 10 --spacing 20 --seed 21 --out " + inst) == 0);
  const auto sol = tmp.file("s.sol");
  REQUIRE(run("solve tspcp " + inst +
              " --seed 4 --max-iters 15 --test-profile --out " + sol) == 0);
  REQUIRE(run("validate " + inst + " " + sol) == 0);
  const auto records = tspcp::parse_solutions(slurp(sol));
  REQUIRE(records.size() == 1);
  CHECK(records[0].radius > 0.0);
  CHECK(records[0].circles.size() == 10);

  const auto svg = tmp.file("s.svg");
  REQUIRE(run("render " + inst + " " + sol + " --out " + svg) == 0);
  CHECK(slurp(svg).rfind("<svg", 0) == 0);
}

TEST_CASE("invalid inputs exit with code 2") {
  TempDir tmp;
  spit(tmp.file("garbage.txt"), "this is not an instance\n");
  CHECK(run("solve tspcp " + tmp.file("garbage.txt")) == 2);
  CHECK(run("solve tspcp " + tmp.file("missing.txt")) == 2);
  CHECK(run("gen --family nosuch --n 5 --out " + tmp.file("x")) == 2);
  CHECK(run("definitely-not-a-subcommand") == 2);
}

TEST_CASE("bench emits one row per instance and retains records") {
  TempDir tmp;
  std::string paths;
  for (int i = 0; i < 3; ++i) {
    const auto p = tmp.file("b" + std::to_string(i) + ".tspcp");
    REQUIRE(run("gen --family mesh --n 8 --spacing 15 --seed " +
                std::to_string(30 + i) + " --name bench" + std::to_string(i) +
                " --out " + p) == 0);
    paths += " " + p;
  }
  const auto records_path = tmp.file("runs.sol");
  const auto table_path = tmp.file("table.txt");
  const int status = std::system(
      (kBin + " bench" + paths +
       " --variant tspcp --runs 2 --seed 1 --max-iters 10 --test-profile --out " +
       records_path + " > " + table_path + " 2>&1")
          .c_str());
  REQUIRE(WEXITSTATUS(status) == 0);
  const auto records = tspcp::parse_solutions(slurp(records_path));
  CHECK(records.size() == 6);  // 3 instances x 2 runs
  const auto table = slurp(table_path);
  CHECK(table.find("bench0") != std::string::npos);
  CHECK(table.find("bench1") != std::string::npos);
  CHECK(table.find("bench2") != std::string::npos);

  // Statistics are recomputable from the retained records.
  for (int i = 0; i < 3; ++i) {
    std::vector<double> radii;
    for (const auto& r : records)
      if (r.instance == "bench" + std::to_string(i)) radii.push_back(r.radius);
    CHECK(radii.size() == 2);
  }
}
