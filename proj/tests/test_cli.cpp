#include <doctest.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "elastica/cli.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Runs the CLI with stdout redirected to a file; returns the exit code and
// leaves the captured text in *out when requested.
int run(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::vector<const char*> argv;
  argv.push_back("elastica");
  for (const auto& a : args) argv.push_back(a.c_str());

  fs::path cap = fs::temp_directory_path() / "elastica_cli_capture.txt";
  std::fflush(stdout);
  int saved = dup(fileno(stdout));
  FILE* f = std::freopen(cap.string().c_str(), "w", stdout);
  REQUIRE(f != nullptr);
  int rc = elastica::run_cli(static_cast<int>(argv.size()), argv.data());
  std::fflush(stdout);
  dup2(saved, fileno(stdout));
  close(saved);
  if (out) {
    std::ifstream in(cap);
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  return rc;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json manifest(const fs::path& dir) {
  return json::parse(slurp(dir / "manifest.json"));
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("elastica_test_" + tag)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("exit codes separate config errors from computation errors") {
  CHECK(run({"--version"}) == 0);
  CHECK(run({"--help"}) == 0);
  CHECK(run({}) == 2);                        // a subcommand is required
  CHECK(run({"hierarchy", "--n", "0"}) == 2); // out of range
  CHECK(run({"flow", "--loop", "nosuch"}) == 2);
  CHECK(run({"curve", "--in", "/nonexistent/curve.json"}) == 2);
  CHECK(run({"psdo", "--power", "2"}) == 2);  // even power is not a flow
  // a valid config that blows up mid-integration is a computation error
  CHECK(run({"flow", "--loop", "circle", "--n", "64", "--scheme", "rk4",
             "--dt", "1", "--steps", "10"}) == 1);
}

TEST_CASE("hierarchy prints the first three equations") {
  TempDir dir("hierarchy");
  std::string text;
  REQUIRE(run({"hierarchy", "--n", "3", "--out", dir.str()}, &text) == 0);
  json m = manifest(dir.path);
  CHECK(m["tool"] == "elastica");
  CHECK(m["version"] == elastica::kToolVersion);
  CHECK(m["subcommand"] == "hierarchy");
  REQUIRE(m["equations"].size() == 3);
  std::string x1 = m["equations"][0], x2 = m["equations"][1],
              x3 = m["equations"][2];
  CHECK(x1.find("u1") != std::string::npos);
  CHECK(x2.find("6 * u0 u1") != std::string::npos);
  CHECK(x2.find("u3") != std::string::npos);
  CHECK(x3.find("30 * u0^2 u1") != std::string::npos);
  CHECK(x3.find("20 * u1 u2") != std::string::npos);
  CHECK(x3.find("10 * u0 u3") != std::string::npos);
  CHECK(x3.find("u5") != std::string::npos);
  // the text file carries the same rows
  std::string txt = slurp(dir.path / "hierarchy.txt");
  CHECK(txt.find(x3) != std::string::npos);
  // stdout shows the equations and the manifest
  CHECK(text.find("30 * u0^2 u1") != std::string::npos);
}

TEST_CASE("flow on a unit circle reports bending energy one half") {
  TempDir dir("flow_circle");
  REQUIRE(run({"flow", "--loop", "circle", "--steps", "0", "--out",
               dir.str()}) == 0);
  json m = manifest(dir.path);
  CHECK(std::abs(m["energy"].get<double>() - 0.5) < 1e-12);
  REQUIRE(m["frames"].size() == 1);
  CHECK(m["frames"][0]["t"].get<double>() == 0.0);
  CHECK(m["frames"][0]["winding"].get<int>() == 1);
  CHECK(std::abs(m["length"].get<double>() - 2.0 * M_PI) < 1e-12);
  // frame CSV contract
  std::string csv = slurp(dir.path / "frame_000000.csv");
  CHECK(csv.rfind("s,x,y,k\n", 0) == 0);
}

TEST_CASE("identical config and seed give byte identical frames") {
  TempDir a("det_a"), b("det_b");
  std::vector<std::string> common = {
      "flow", "--loop", "random", "--seed", "777", "--n",    "64",
      "--dt", "1e-4",   "--steps", "50",    "--save-every", "25"};
  auto runa = common, runb = common;
  runa.insert(runa.end(), {"--out", a.str()});
  runb.insert(runb.end(), {"--out", b.str()});
  REQUIRE(run(runa) == 0);
  REQUIRE(run(runb) == 0);
  for (const char* name :
       {"frame_000000.csv", "frame_000001.csv", "frame_000002.csv"})
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  // manifests agree except for the echoed output directory
  json ma = manifest(a.path), mb = manifest(b.path);
  ma["config"].erase("out");
  mb["config"].erase("out");
  CHECK(ma == mb);
  // a different seed changes the frames
  TempDir c("det_c");
  auto runc = common;
  runc[4] = "778";
  runc.insert(runc.end(), {"--out", c.str()});
  REQUIRE(run(runc) == 0);
  CHECK(slurp(a.path / "frame_000002.csv") !=
        slurp(c.path / "frame_000002.csv"));
}

TEST_CASE("flow reads solver settings from a config file") {
  TempDir dir("flow_cfg");
  fs::create_directories(dir.path);
  {
    std::ofstream cfg(dir.path / "run.cfg");
    cfg << "# solver settings\n"
        << "dt = 1e-4\n"
        << "steps = 20\n"
        << "save_every = 10\n"
        << "scheme = if\n";
  }
  REQUIRE(run({"flow", "--loop", "circle", "--config",
               (dir.path / "run.cfg").string(), "--out", dir.str()}) == 0);
  json m = manifest(dir.path);
  CHECK(m["config"]["dt"].get<double>() == 1e-4);
  CHECK(m["config"]["steps"].get<int>() == 20);
  CHECK(m["config"]["scheme"] == "if");
  REQUIRE(m["frames"].size() == 3);
  CHECK(std::abs(m["frames"][2]["t"].get<double>() - 2e-3) < 1e-15);
}

TEST_CASE("curve subcommand emits periods and relation checks") {
  TempDir dir("curve");
  fs::create_directories(dir.path);
  {
    std::ofstream cj(dir.path / "g1.json");
    cj << R"({"genus": 1, "branch_points": [[-0.9,0],[0.1,0],[1.1,0]]})";
  }
  REQUIRE(run({"curve", "--in", (dir.path / "g1.json").string(), "--out",
               dir.str()}) == 0);
  json m = manifest(dir.path);
  CHECK(m["genus"] == 1);
  CHECK(m["legendre_defect"].get<double>() < 1e-10);
  CHECK(m["t_symmetry_defect"].get<double>() < 1e-10);
  CHECK(fs::exists(dir.path / "periods.json"));
  json pj = json::parse(slurp(dir.path / "periods.json"));
  CHECK(pj == m["periods"]);

  // point evaluation on the same curve
  std::string text;
  REQUIRE(run({"curve", "--in", (dir.path / "g1.json").string(), "--at",
               "0.31,0.12"}, &text) == 0);
  CHECK(text.find("\"eval\"") != std::string::npos);

  // relation checks require genus 3
  CHECK(run({"curve", "--in", (dir.path / "g1.json").string(),
             "--relations", "4"}) == 2);
}

TEST_CASE("spectrum scan finds the free band edges") {
  TempDir dir("spectrum");
  std::string text;
  // free operator over period pi: edges at xbar = n^2, so the period must be
  // passed at full precision (to_string would truncate to 6 decimals)
  char pi17[32];
  std::snprintf(pi17, sizeof(pi17), "%.17g", M_PI);
  REQUIRE(run({"spectrum", "--source", "builtin:zero", "--period", pi17,
               "--lo", "-0.5", "--hi", "10", "--grid", "200", "--edges",
               "--out", dir.str()}, &text) == 0);
  json m = manifest(dir.path);
  REQUIRE(m["band_edges"].size() == 4);
  const double expect[4] = {0.0, 1.0, 4.0, 9.0};
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(m["band_edges"][j]["xbar"].get<double>() - expect[j]) <
          1e-6);
    CHECK(m["band_edges"][j]["simple"].get<bool>() == (j == 0));
  }
  std::string csv = slurp(dir.path / "scan.csv");
  CHECK(csv.rfind("xbar,delta,stable\n", 0) == 0);
  // one header plus one row per grid point
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);
  CHECK(text.find("scanned 200 points") != std::string::npos);
}

TEST_CASE("verify subcommand reports suite results") {
  std::string text;
  CHECK(run({"verify", "--suite", "lax"}, &text) == 0);
  CHECK(text.find("result: pass") != std::string::npos);
  REQUIRE(run({"verify", "--suite", "genus3", "--points", "3"}, &text) == 0);
  CHECK(text.find("15/15 relations pass") != std::string::npos);
  CHECK(run({"verify", "--suite", "nosuch"}) == 2);
}
