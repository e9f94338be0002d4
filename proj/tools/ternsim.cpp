// ternsim: simulator and analysis toolkit for ternary nonlocal systems on
// the unit torus. Subcommands: simulate, analyze, sharp, coreshell, lattice,
// calibrate, preset, sweep.

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "tern/calibrate.hpp"
#include "tern/coreshell.hpp"
#include "tern/experiment.hpp"
#include "tern/field_io.hpp"
#include "tern/green.hpp"
#include "tern/lattice.hpp"
#include "tern/morphology.hpp"
#include "tern/sharp.hpp"

namespace {

void cap_threads_from_env() {
#if defined(_OPENMP)
  if (const char* env = std::getenv("TD_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_max_threads()));
  }
#endif
}

tern::ExperimentSpec spec_from_options(const std::string& preset_name, const std::string& config_path) {
  if (!preset_name.empty() && !config_path.empty())
    throw CLI::ValidationError("simulate", "use either --preset or --config, not both");
  if (!preset_name.empty()) return tern::preset(preset_name);
  if (config_path.empty()) throw CLI::ValidationError("simulate", "one of --preset or --config is required");
  const auto cfg = tern::read_config(config_path);
  tern::ExperimentSpec spec;
  spec.name = "config";
  spec.params = cfg.params;
  spec.n = cfg.n;
  spec.flow.seed = cfg.seed;
  if (cfg.dt > 0) spec.flow.dt = cfg.dt;
  if (cfg.stabilizer > 0) spec.flow.stabilizer = cfg.stabilizer;
  if (cfg.max_steps >= 0) spec.flow.max_steps = cfg.max_steps;
  if (cfg.noise_amplitude >= 0) spec.flow.noise_amplitude = cfg.noise_amplitude;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  cap_threads_from_env();
  CLI::App app{"ternary nonlocal isoperimetric toolkit"};
  app.require_subcommand(1);

  // ---- simulate -----------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "run a gradient-flow experiment");
  std::string sim_preset, sim_config, sim_out = "out";
  long sim_seed = -1, sim_steps = -1;
  int sim_grid = 0;
  bool sim_strict = false;
  double sim_dt = -1.0;
  sim->add_option("--preset", sim_preset, "preset name (see 'preset' subcommand)");
  sim->add_option("--config", sim_config, "TOML config path");
  sim->add_option("--out", sim_out, "output directory");
  sim->add_option("--seed", sim_seed, "override RNG seed");
  sim->add_option("--steps", sim_steps, "override max steps");
  sim->add_option("--grid", sim_grid, "override grid resolution n");
  sim->add_option("--dt", sim_dt, "override time step");
  sim->add_flag("--strict", sim_strict, "energy-dissipation violations abort the run");
  sim->callback([&]() {
    auto spec = spec_from_options(sim_preset, sim_config);
    spec.out_dir = sim_out;
    if (sim_seed >= 0) spec.flow.seed = static_cast<unsigned long>(sim_seed);
    if (sim_steps >= 0) spec.flow.max_steps = sim_steps;
    if (sim_grid > 0) spec.n = sim_grid;
    if (sim_dt > 0) spec.flow.dt = sim_dt;
    spec.flow.strict = sim_strict;
    const auto report = tern::run_experiment(spec);
    for (const auto& a : report.assertions)
      std::cout << (a.passed ? "[ok]   " : "[FAIL] ") << a.name << (a.detail.empty() ? "" : "  " + a.detail)
                << "\n";
    std::cout << (report.passed ? "PASSED" : "FAILED") << " " << report.name << " (" << report.steps << " steps, "
              << report.stop_reason << ", E=" << report.final_energy << ")\n";
    if (!report.passed) throw CLI::RuntimeError(1);
  });

  // ---- analyze ------------------------------------------------------------
  auto* ana = app.add_subcommand("analyze", "morphology report for a snapshot file");
  std::string ana_snapshot, ana_out = "morphology.json";
  double ana_epsilon = 0.035;
  ana->add_option("snapshot", ana_snapshot, "snapshot .tdf file")->required();
  ana->add_option("--out", ana_out, "JSON report path");
  ana->add_option("--epsilon", ana_epsilon, "interface width for junction windows");
  ana->callback([&]() {
    const auto channels = tern::io::read_snapshot(ana_snapshot);
    if (channels.size() < 2) throw CLI::RuntimeError(1);
    tern::PhaseDensity u{channels[0], channels[1]};
    const auto rep = tern::morph::analyze(u, ana_epsilon);
    tern::morph::write_report_json(ana_out, rep);
    std::cout << rep.components.size() << " components, " << rep.junctions.size() << " junctions -> " << ana_out
              << "\n";
    for (const auto& c : rep.components)
      std::cout << "  #" << c.id << " " << tern::morph::class_name(c.classification) << " area=("
                << c.area1 << ", " << c.area2 << ")\n";
  });

  // ---- sharp --------------------------------------------------------------
  auto* shp = app.add_subcommand("sharp", "sharp-interface droplet energies and splitting");
  double shp_M1 = 0.12, shp_M2 = 0.04, shp_s01 = 1.0, shp_s02 = 2.0, shp_s12 = 1.0;
  double shp_G11 = 0.0, shp_G12 = 0.0, shp_G22 = 0.0;
  std::string shp_out = "sharp.csv";
  shp->add_option("--M1", shp_M1);
  shp->add_option("--M2", shp_M2);
  shp->add_option("--s01", shp_s01);
  shp->add_option("--s02", shp_s02);
  shp->add_option("--s12", shp_s12);
  shp->add_option("--G11", shp_G11);
  shp->add_option("--G12", shp_G12);
  shp->add_option("--G22", shp_G22);
  shp->add_option("--out", shp_out, "CSV output path");
  shp->callback([&]() {
    const tern::SurfaceTensions sigma{shp_s01, shp_s02, shp_s12};
    const tern::InteractionMatrix Gamma{shp_G11, shp_G12, shp_G22};
    const auto res = tern::sharp::ebar0(shp_M1, shp_M2, sigma, Gamma);
    tern::sharp::write_split_csv(shp_out, shp_M1, shp_M2, sigma, Gamma, res);
    std::cout << "regime: " << tern::regime_name(tern::classify_regime(sigma)) << "\n";
    std::cout << "e0(M) = " << tern::sharp::e0({shp_M1, shp_M2}, sigma, Gamma) << "\n";
    std::cout << "ebar0 = " << res.value << " with K = " << res.components
              << " (certification gap " << res.certification_gap << ")\n";
    std::cout << "mass lower bound = " << tern::sharp::mass_lower_bound(shp_M1, shp_M2, sigma.s01, Gamma)
              << ", component bound = " << tern::sharp::component_bound(shp_M1, shp_M2, sigma.s01, Gamma) << "\n";
    const auto angles = tern::sharp::youngs_angles(sigma);
    std::cout << "youngs angles (deg): " << angles.theta0 * 180 / M_PI << " " << angles.theta1 * 180 / M_PI << " "
              << angles.theta2 * 180 / M_PI << (angles.degenerate ? " (degenerate)" : "") << "\n";
    std::cout << "split -> " << shp_out << "\n";
  });

  // ---- coreshell ----------------------------------------------------------
  auto* csh = app.add_subcommand("coreshell", "core-shell placement integrals and f0");
  double csh_m1 = 0.4, csh_m2 = 0.3, csh_G11 = 2.0, csh_G12 = 1.0, csh_G22 = 1.0;
  std::string csh_out = "coreshell.csv";
  csh->add_option("--m1", csh_m1);
  csh->add_option("--m2", csh_m2);
  csh->add_option("--G11", csh_G11);
  csh->add_option("--G12", csh_G12);
  csh->add_option("--G22", csh_G22);
  csh->add_option("--out", csh_out, "CSV output path");
  csh->callback([&]() {
    const tern::SurfaceTensions sigma{1.0, 2.0, 1.0};
    const tern::sharp::MassPair m{csh_m1, csh_m2};
    const tern::InteractionMatrix G{csh_G11, csh_G12, csh_G22};
    const auto r = tern::coreshell::f0(m, sigma, G);
    tern::coreshell::write_f0_csv(csh_out, m, G, r);
    std::cout << "f0 = " << r.value << " at t = " << r.t_opt << " ("
              << tern::coreshell::placement_name(r.tag) << ") -> " << csh_out << "\n";
  });

  // ---- lattice ------------------------------------------------------------
  auto* lat = app.add_subcommand("lattice", "droplet-configuration descent on the torus");
  int lat_K = 8;
  double lat_m1 = 0.2, lat_m2 = 0.1, lat_G11 = 2.0, lat_G12 = 0.0, lat_G22 = 2.0;
  long lat_seed = 1, lat_steps = 5000;
  std::string lat_out = "lattice.json";
  lat->add_option("--K", lat_K, "droplet count");
  lat->add_option("--m1", lat_m1, "species-1 mass per droplet");
  lat->add_option("--m2", lat_m2, "species-2 mass per droplet");
  lat->add_option("--G11", lat_G11);
  lat->add_option("--G12", lat_G12);
  lat->add_option("--G22", lat_G22);
  lat->add_option("--seed", lat_seed);
  lat->add_option("--steps", lat_steps);
  lat->add_option("--out", lat_out, "JSON output path");
  lat->callback([&]() {
    const tern::SurfaceTensions sigma{1.0, 2.0, 1.0};
    const tern::InteractionMatrix G{lat_G11, lat_G12, lat_G22};
    std::mt19937_64 rng(static_cast<unsigned long>(lat_seed));
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    tern::lattice::DropletConfig c;
    for (int k = 0; k < lat_K; ++k)
      c.droplets.push_back({{lat_m1, lat_m2}, u(rng), u(rng), 0.0});
    tern::lattice::OptimizeOptions opt;
    opt.max_steps = lat_steps;
    const auto out = tern::lattice::optimize_positions(c, sigma, G, opt);
    tern::lattice::write_config_json(lat_out, out, sigma, G);
    const auto hex = tern::lattice::hexagonality(out);
    std::cout << "K=" << lat_K << " F0=" << tern::lattice::F0(out, sigma, G) << " nn_mean=" << hex.mean_nn
              << " nn_cv=" << hex.cv << " -> " << lat_out << "\n";
  });

  // ---- calibrate ----------------------------------------------------------
  auto* cal = app.add_subcommand("calibrate", "geodesic surface tensions of a well");
  double cal_c01 = tern::kWellBase, cal_c02 = tern::kWellBase, cal_c12 = tern::kWellBase, cal_cb = -1.0;
  double cal_target = 0.0;
  cal->add_option("--c01", cal_c01);
  cal->add_option("--c02", cal_c02);
  cal->add_option("--c12", cal_c12);
  cal->add_option("--cb", cal_cb, "simplex penalty (default 4*c01)");
  cal->add_option("--target-ratio", cal_target, "fit c02 for a nominal s02/s01 instead");
  cal->callback([&]() {
    if (cal_target > 0.0) {
      const auto w = tern::fit_well_c02(cal_target, cal_c01);
      const auto r = tern::calibrate_sigma(w);
      std::cout << "fitted c02 = " << w.c02 << " (multiplier " << w.c02 / cal_c01 << ")\n";
      std::cout << "sigma = (" << r.sigma.s01 << ", " << r.sigma.s02 << ", " << r.sigma.s12 << ")\n";
      return;
    }
    const tern::WellParams w{cal_c01, cal_c02, cal_c12, cal_cb > 0 ? cal_cb : 4.0 * cal_c01};
    const auto r = tern::calibrate_sigma(w);
    std::cout << "sigma = (" << r.sigma.s01 << ", " << r.sigma.s02 << ", " << r.sigma.s12 << ")"
              << (r.converged ? "" : "  [not converged past finest level]")
              << "  levels=" << r.levels_used << " last_change=" << r.last_change << "\n";
    if (!r.converged) throw CLI::RuntimeError(2);
  });

  // ---- preset -------------------------------------------------------------
  auto* pre = app.add_subcommand("preset", "list presets or write one as a config");
  std::string pre_name, pre_out;
  pre->add_option("name", pre_name, "preset to show");
  pre->add_option("--out", pre_out, "write the preset as a TOML config");
  pre->callback([&]() {
    if (pre_name.empty()) {
      for (const auto& n : tern::preset_names()) std::cout << n << "\n";
      return;
    }
    const auto spec = tern::preset(pre_name);
    std::cout << spec.name << ": sigma02=" << spec.params.sigma.s02 << " masses=(" << spec.params.M1 << ", "
              << spec.params.M2 << ") gamma=(" << spec.params.gamma.g11 << ", " << spec.params.gamma.g12 << ", "
              << spec.params.gamma.g22 << ") n=" << spec.n << " eps=" << spec.params.epsilon << "\n";
    if (!pre_out.empty()) {
      tern::ConfigFile cfg;
      cfg.params = spec.params;
      cfg.n = spec.n;
      cfg.seed = spec.flow.seed;
      cfg.dt = spec.flow.dt;
      cfg.max_steps = spec.flow.max_steps;
      cfg.noise_amplitude = spec.flow.noise_amplitude;
      tern::write_config(pre_out, cfg);
      std::cout << "wrote " << pre_out << "\n";
    }
  });

  // ---- sweep --------------------------------------------------------------
  auto* swp = app.add_subcommand("sweep", "run a preset across parameter values");
  std::string swp_preset, swp_param, swp_values, swp_out = "sweep_out";
  long swp_steps = -1;
  int swp_grid = 0;
  swp->add_option("--preset", swp_preset, "base preset")->required();
  swp->add_option("--param", swp_param, "dotted parameter path, eg sigma.s02")->required();
  swp->add_option("--values", swp_values, "comma-separated values")->required();
  swp->add_option("--out", swp_out, "output directory");
  swp->add_option("--steps", swp_steps, "override max steps");
  swp->add_option("--grid", swp_grid, "override grid resolution");
  swp->callback([&]() {
    auto base = tern::preset(swp_preset);
    base.out_dir = swp_out;
    if (swp_steps >= 0) base.flow.max_steps = swp_steps;
    if (swp_grid > 0) base.n = swp_grid;
    std::vector<double> values;
    std::stringstream ss(swp_values);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) values.push_back(std::stod(item));
    const auto rep = tern::sweep(base, swp_param, values);
    for (const auto& row : rep.rows)
      std::cout << (row.passed ? "[ok]   " : "[FAIL] ") << row.run_name << "  " << row.summary << "\n";
    std::cout << (rep.all_passed ? "PASSED" : "FAILED") << " sweep of " << rep.rows.size() << " runs -> "
              << swp_out << "/sweep.csv\n";
    if (!rep.all_passed) throw CLI::RuntimeError(1);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
