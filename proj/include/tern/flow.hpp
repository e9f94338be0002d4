#pragma once
// Mass-constrained L² gradient flow of the diffuse energy,
//   ∂_t u_i = -[ (ε²/2)(-Δ)(C u)_i + (1/2) ∂_i W(u) + ε Σ_j γ_ij G*u_j ] + λ_i,
// with C = [[2,1],[1,2]] from the three-component gradient term. Time
// stepping is semi-implicit with a linear stabilizing split: the ε² term and
// S·(u^{n+1}-u^n) are implicit (diagonal per Fourier mode in the u1±u2
// channels), the well and interaction terms explicit. The multipliers are a
// closed-form mean shift: the k=0 coefficient of each density is pinned to
// its target mass every step, so the bookkept mass drift is exactly zero.
// A penalty variant adds rho·(mean - M) to the multiplier.

#include <complex>
#include <string>
#include <vector>

#include "tern/energy.hpp"
#include "tern/params.hpp"

namespace tern {

struct FlowConfig {
  double dt = 1e-3;
  double stabilizer = -1.0;  // < 0: auto, from the well Hessian bound + interaction norm
  long max_steps = 200000;
  double energy_tol = 1e-9;  // relative decrease per step, averaged over `window`
  int window = 100;
  unsigned long seed = 1;
  long snapshot_every = 0;   // 0 = only final
  double noise_amplitude = 0.05;
  double noise_correlation = 0.0;  // Gaussian correlation length of the seed
                                   // noise in grid cells; 0 = white
  double rho = 0.0;          // augmented penalty; 0 = pure projection multiplier
  bool strict = false;       // energy increase beyond 1e-12 aborts the run

  void validate() const;
};

struct EnergyRecord {
  long step = 0;
  double time = 0.0;
  double total = 0.0, gradient = 0.0, well = 0.0, nonlocal = 0.0;
  double drift1 = 0.0, drift2 = 0.0;  // bookkept mean minus target mass
};

struct FlowState {
  PhaseDensity u;
  double t = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0;
  long step_count = 0;
  double mass1 = 0.0, mass2 = 0.0;  // scheme-conserved means (pinned k=0 modes)
  std::vector<EnergyRecord> history;
  // spectra of u carried over from the previous implicit solve; invalidated
  // whenever u is modified externally
  std::vector<std::complex<double>> spec1, spec2;
  bool spec_valid = false;
};

struct RunReport {
  std::string stop_reason;  // "budget" | "stationary"
  long steps = 0;
  double wall_seconds = 0.0;
  double final_energy = 0.0;
  std::vector<std::string> snapshot_paths;
};

// Uniform state M_i plus clipped zero-mean noise, means corrected to M_i.
// Bit-reproducible per seed.
FlowState init_random(const ModelParams& p, int n, const FlowConfig& cfg);

// One accepted step; records the post-step energy in the history.
void step(FlowState& s, const FlowConfig& cfg, const ModelParams& p);

// Iterates until max_steps or stationarity. out_dir != "" enables snapshot
// files (grid binary + composite PPM) every snapshot_every steps.
RunReport run(FlowState& s, const FlowConfig& cfg, const ModelParams& p, const std::string& out_dir = "");

double auto_stabilizer(const ModelParams& p);

// CSV: step,time,total,gradient_term,well_term,nonlocal_term,mass1_drift,mass2_drift
void write_energy_csv(const std::string& path, const std::vector<EnergyRecord>& history);

}  // namespace tern
