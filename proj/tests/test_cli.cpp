#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "stiffcrowd/acceptance.hpp"
#include "stiffcrowd/config.hpp"
#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/output.hpp"
#include "stiffcrowd/sweep.hpp"

using namespace stiffcrowd;
namespace fs = std::filesystem;

namespace {

const char* kBlock = R"(# moving block
x_min = -0.5
x_max = 2.5
nx = 200
velocity = affine
velocity.a = 2
velocity.b = -1
block = 0 0.5 1
k = 8
T = 0.5
output_dt = 0.25
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("stiffcrowd_test_" + name);
  fs::remove_all(p);
  for (int v = 2; v < 10; ++v) fs::remove_all(p.string() + "-v" + std::to_string(v));
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(kBlock);
  CHECK(cfg.scenario.k == 8);
  CHECK(cfg.scenario.cfl == 0.45);
  CHECK(cfg.scenario.sat_threshold == 0.99);
  CHECK(cfg.scenario.eps == 0.0);
  REQUIRE(cfg.scenario.intervals.size() == 1);
  CHECK(cfg.scenario.intervals[0].b == 0.5);
  CHECK(cfg.manifest.sweep.points() == 1);

  try {
    parse_config(std::string(kBlock) + "k = -1\n");
    FAIL("accepted k = -1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
    CHECK(e.subject() == "k");
  }
  try {
    parse_config("x_min = 0\nspeed = 3\n");
    FAIL("accepted unknown key");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("nx = 1.5\n"), Error);
  CHECK_THROWS_AS(parse_config(std::string(kBlock) + "sweep.k = 1 2 3 4 5 6 7 8 9\ncap = 4\n"), Error);
}

TEST_CASE("sweep points and hashing") {
  auto cfg = parse_config(std::string(kBlock) + "sweep.k = 1, 4\nsweep.nx = 100 200 300\n");
  CHECK(cfg.manifest.sweep.points() == 6);
  const auto p3 = sweep_point(cfg.scenario, cfg.manifest.sweep, 3);
  CHECK(p3.k == 4);
  CHECK(p3.nx == 200);
  CHECK(fnv1a("") == 14695981039346656037ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  // Comments and whitespace do not change the hash.
  const std::string base(kBlock);
  CHECK(parse_config(base + "eps = 0.01   # smooth\n").manifest.hash == parse_config(base + "eps=0.01\n").manifest.hash);
  CHECK(parse_config(base + "eps = 0.02\n").manifest.hash != parse_config(base + "eps=0.01\n").manifest.hash);
}

TEST_CASE("output directories are versioned") {
  const auto base = scratch("claim");
  CHECK(claim_output_dir(base) == base);
  write_file(base / "x.txt", "1");
  CHECK(claim_output_dir(base) == fs::path(base.string() + "-v2"));
  write_file(fs::path(base.string() + "-v2") / "x.txt", "1");
  CHECK(claim_output_dir(base) == fs::path(base.string() + "-v3"));
}

TEST_CASE("runs are bit-reproducible") {
  const auto cfg = parse_config(kBlock);
  const auto a = scratch("rerun_a"), b = scratch("rerun_b");
  const auto ra = run_point(cfg.scenario, a), rb = run_point(cfg.scenario, b);
  CHECK(ra.ok);
  CHECK(rb.ok);
  for (int i = 0; i < 3; ++i) {
    const auto name = snapshot_name(i);
    REQUIRE(fs::exists(a / name));
    CHECK(slurp(a / name) == slurp(b / name));
  }
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
}

TEST_CASE("sweeps and comparison") {
  SUBCASE("empty axes give a single run") {
    const auto out = scratch("single");
    CHECK(run_sweep(parse_config(kBlock), out, 2) == 0);
    CHECK(fs::exists(out / "run" / "summary.json"));
    CHECK(fs::exists(out / "trend.txt"));
  }
  SUBCASE("k sweep writes one row per point") {
    const auto out = scratch("ksweep");
    CHECK(run_sweep(parse_config(std::string(kBlock) + "sweep.k = 1 4 16\n"), out, 3) == 0);
    std::istringstream trend(slurp(out / "trend.txt"));
    int rows = 0;
    for (std::string line; std::getline(trend, line);)
      if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 3);
  }
  SUBCASE("front tracking against finite volumes") {
    const auto out = scratch("compare");
    const auto cfg = parse_config(R"(x_min = -1.6
x_max = 2.2
nx = 400
velocity = affine
velocity.a = 2
velocity.b = -1
block = -1 -0.5 1
block = 0.5 1 1
T = 1.3
output_dt = 0.02
compare.k = 64
)");
    const auto rep = run_compare(cfg, out);
    CHECK(std::abs(rep.merge_time_track - std::log(3.0)) < 1e-8);
    CHECK(rep.merge_time_fv > 0);
    CHECK(rep.max_front_error < 0.05);
    CHECK(fs::exists(out / "compare.json"));
  }
}

TEST_CASE("acceptance suites") {
  const auto& s = acceptance_suites();
  CHECK(std::find(s.begin(), s.end(), "core") != s.end());
  CHECK(std::find(s.begin(), s.end(), "quick") != s.end());
  CHECK(suite_criteria("core").size() == 14);
  CHECK_THROWS_AS(suite_criteria("nightly"), Error);
}

TEST_CASE("command line exit codes") {
  const std::string cli = STIFFCROWD_CLI;
  const auto cfg = scratch("cli_cfg");
  fs::create_directories(cfg);
  write_file(cfg / "block.cfg", kBlock);
  write_file(cfg / "bad.cfg", "k = -1\n");
  const auto out = scratch("cli_out");
  auto code = [](const std::string& cmd) {
    const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(code(cli + " --out " + out.string() + " run " + (cfg / "block.cfg").string()) == 0);
  CHECK(fs::exists(out / "summary.json"));
  CHECK(code(cli + " run " + (cfg / "bad.cfg").string()) == 2);
  CHECK(code(cli + " acceptance nightly") != 0);
  CHECK(code(cli + " --jobs 0 run " + (cfg / "block.cfg").string()) != 0);
}

TEST_CASE("shipped configs parse") {
  int n = 0;
  for (const auto& e : fs::directory_iterator(STIFFCROWD_CONFIGS)) {
    if (e.path().extension() != ".cfg") continue;
    CHECK_NOTHROW(load_config(e.path().string()));
    ++n;
  }
  CHECK(n >= 4);
}
