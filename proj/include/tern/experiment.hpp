#pragma once
// Experiment runner: flow simulation, morphology analysis of the final
// state, artifact emission (energy CSV, snapshots, images, JSON reports),
// assertion checking, and parameter sweeps.

#include <optional>
#include <string>
#include <vector>

#include "tern/morphology.hpp"
#include "tern/presets.hpp"

namespace tern {

struct AssertionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  bool passed = true;  // all enabled assertions
  std::string stop_reason;
  long steps = 0;
  double wall_seconds = 0.0;
  double final_energy = 0.0;
  std::vector<AssertionResult> assertions;
  std::optional<morph::MorphologyReport> morphology;
  std::string out_dir;
};

// Runs the flow, analyzes, writes artifacts under spec.out_dir:
// config.toml, energy.csv, state_<step>.{tdf,ppm}, final.{tdf,ppm,pgm},
// morphology.json, report.json. The report carries one entry per enabled
// assertion; failures are recorded, not thrown.
ExperimentReport run_experiment(const ExperimentSpec& spec);

void write_experiment_report_json(const std::string& path, const ExperimentReport& report);

struct SweepRow {
  std::string run_name;
  double value = 0.0;
  bool passed = false;
  std::string summary;  // classification tally or error text
};

struct SweepReport {
  std::vector<SweepRow> rows;
  bool all_passed = true;
};

// One run per value of a dotted parameter path (sigma.s02, gamma.g11,
// gamma.g12, gamma.g22, masses.M1, masses.M2, epsilon, flow.dt, flow.seed,
// well.c02, n). Results aggregate into <out_dir>/sweep.csv; per-run failures
// are recorded per row. An empty value list yields an empty table.
SweepReport sweep(const ExperimentSpec& base, const std::string& parameter, const std::vector<double>& values);

void apply_parameter(ExperimentSpec& spec, const std::string& parameter, double value);

}  // namespace tern
