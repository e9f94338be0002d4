#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "tern/experiment.hpp"
#include "tern/field_io.hpp"

using namespace tern;
namespace fs = std::filesystem;

TEST_CASE("presets carry the documented parameter sets") {
  auto p2e = preset("figure2e");
  CHECK(p2e.params.sigma.s02 == 2.0);
  CHECK(p2e.params.M1 == 0.12);
  CHECK(p2e.params.M2 == 0.04);
  CHECK(p2e.params.gamma.g11 == 0.0);

  auto p7 = preset("figure7");
  CHECK(p7.params.gamma.g11 == 20000.0);
  CHECK(p7.params.gamma.g12 == 0.0);
  CHECK(p7.params.gamma.g22 == 100000.0);
  CHECK(p7.params.M1 == 0.12);
  CHECK(p7.params.M2 == 0.06);

  auto p3b = preset("figure3b");
  CHECK(p3b.params.M1 == 0.04);
  CHECK(p3b.params.M2 == 0.12);
  CHECK(p3b.params.sigma.s02 == 1.6);

  auto p5 = preset("figure5");
  CHECK(p5.params.gamma.g11 == 4000.0);
  CHECK(p5.params.gamma.g22 == 20000.0);
  CHECK(p5.expected_min_components == 3);

  CHECK(preset_names().size() == 17);
  CHECK_THROWS_WITH_AS(preset("figure9z"), doctest::Contains("available"), std::invalid_argument);
}

TEST_CASE("run_experiment produces re-readable artifacts") {
  auto spec = preset("figure2a");
  spec.n = 64;
  spec.params.epsilon = 0.12;  // keep the interface resolved at the tiny grid
  spec.flow.max_steps = 150;
  spec.flow.seed = 7;
  spec.out_dir = "cli_test_run";
  spec.expected_classes.clear();  // 150 steps will not converge to a bubble
  const auto report = run_experiment(spec);
  CHECK(report.passed);
  CHECK(report.steps == 150);

  // every artifact is re-readable by the toolkit's own loaders
  auto channels = io::read_snapshot("cli_test_run/final.tdf");
  CHECK(channels.size() == 2);
  CHECK(channels[0].n() == 64);
  auto cfg = read_config("cli_test_run/config.toml");
  CHECK(cfg.n == 64);
  CHECK(cfg.seed == 7);
  CHECK(cfg.params.M1 == 0.12);
  std::ifstream csv("cli_test_run/energy.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "step,time,total,gradient_term,well_term,nonlocal_term,mass1_drift,mass2_drift");
  long rows = 0;
  std::string line;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 151);
  CHECK(fs::exists("cli_test_run/morphology.json"));
  CHECK(fs::exists("cli_test_run/report.json"));
  fs::remove_all("cli_test_run");
}

TEST_CASE("experiment is deterministic per seed") {
  auto spec = preset("figure2a");
  spec.n = 32;
  spec.params.epsilon = 0.2;
  spec.flow.max_steps = 60;
  spec.flow.seed = 3;
  spec.expected_classes.clear();
  spec.out_dir = "cli_det_a";
  const auto a = run_experiment(spec);
  spec.out_dir = "cli_det_b";
  const auto b = run_experiment(spec);
  CHECK(a.final_energy == b.final_energy);
  // identical energy CSVs byte for byte
  auto slurp = [](const std::string& p) {
    std::ifstream is(p);
    return std::string((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  };
  CHECK(slurp("cli_det_a/energy.csv") == slurp("cli_det_b/energy.csv"));
  fs::remove_all("cli_det_a");
  fs::remove_all("cli_det_b");
}

TEST_CASE("sweep: empty values, seed sweep, unknown parameter") {
  auto base = preset("figure2a");
  base.n = 32;
  base.params.epsilon = 0.2;
  base.flow.max_steps = 40;
  base.expected_classes.clear();
  base.out_dir = "cli_sweep";

  const auto empty = sweep(base, "flow.seed", {});
  CHECK(empty.rows.empty());
  CHECK(empty.all_passed);
  CHECK(fs::exists("cli_sweep/sweep.csv"));

  const auto seeds = sweep(base, "flow.seed", {1.0, 2.0});
  CHECK(seeds.rows.size() == 2);
  CHECK(seeds.all_passed);

  const auto bad = sweep(base, "nope.nope", {1.0});
  CHECK_FALSE(bad.all_passed);
  REQUIRE(bad.rows.size() == 1);
  CHECK(bad.rows[0].summary.find("unknown parameter") != std::string::npos);
  fs::remove_all("cli_sweep");
}

TEST_CASE("apply_parameter updates the coupled well for sigma.s02") {
  auto spec = preset("figure2a");
  apply_parameter(spec, "sigma.s02", 1.8);
  CHECK(spec.params.sigma.s02 == 1.8);
  CHECK(spec.params.well.c02 == doctest::Approx(kWellBase * well_multiplier_for_ratio(1.8)));
  apply_parameter(spec, "gamma.g11", 123.0);
  CHECK(spec.params.gamma.g11 == 123.0);
}
