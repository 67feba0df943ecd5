#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <doctest.h>

#include "../support/generators.hpp"
#include "shocklab/csv.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/pipeline.hpp"
#include "shocklab/run_config.hpp"

using namespace shocklab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("shocklab_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("unknown keys and malformed values are rejected") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.set("model.gamma=2"), ConfigError);
  CHECK_THROWS_AS(cfg.set("model.delta"), ConfigError);
  cfg.set("model.delta=abc");
  CHECK_THROWS_AS(cfg.number("model.delta"), ConfigError);
  cfg.set("model.delta", "0.025");
  CHECK(cfg.model().delta == 0.025);
}

TEST_CASE("INI files map sections onto keys") {
  fs::path dir = scratch("ini");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "run.ini");
    out << "[model]\nr0 = 20\n[sweep]\nvalues = 10, 20,40\n";
  }
  RunConfig cfg = RunConfig::from_ini(dir / "run.ini");
  CHECK(cfg.model().r0 == 20.0);
  CHECK(cfg.number_list("sweep.values") == std::vector<double>{10.0, 20.0, 40.0});
  {
    std::ofstream out(dir / "bad.ini");
    out << "[model]\nradius = 20\n";
  }
  CHECK_THROWS_AS(RunConfig::from_ini(dir / "bad.ini"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("an empty sweep list is a configuration error with exit code 2") {
  RunConfig cfg;
  cfg.set("sweep.values=");
  fs::path out = scratch("empty_sweep");
  std::ostringstream log;
  CHECK(run_command("sweep", cfg, out, log) == 2);
  CHECK(slurp(out / "manifest.json").find("config_error") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("numbers round-trip through their text form") {
  testing::Gen gen(51);
  for (int k = 0; k < 1000; ++k) {
    double v = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.integer(-300, 300));
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("csv reader accepts an optional header") {
  fs::path dir = scratch("csv");
  fs::create_directories(dir);
  {
    CsvWriter w(dir / "a.csv", {"x", "y"});
    w.row({1.5, -2.0});
    w.row({3.0, 4.25});
  }
  CsvTable t = read_csv(dir / "a.csv");
  CHECK(t.header == std::vector<std::string>{"x", "y"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][1] == 4.25);
  fs::remove_all(dir);
}

TEST_CASE("identical configurations produce byte-identical outputs") {
  RunConfig cfg;
  cfg.set("grid.cells_per_delta=128");
  cfg.set("run.t_end=-9.5");
  cfg.set("fan.n_rays=33");
  fs::path a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream log;
  REQUIRE(run_command("evolve", cfg, a, log) == 0);
  REQUIRE(run_command("evolve", cfg, b, log) == 0);
  for (const char* f : {"initial_data.csv", "trajectory.csv", "fan.csv", "mu_min.csv", "energies.csv",
                        "shock_report.json", "run.json"}) {
    INFO(f);
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK_FALSE(slurp(a / f).empty());
  }
  fs::remove_all(a);
  fs::remove_all(b);
}
