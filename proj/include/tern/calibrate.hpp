#pragma once
// Surface tensions from the well: σ_ij is the geodesic distance between
// wells i and j in the degenerate metric √2·√W(u) ds, with the path length
// measured in the embedding where u0 = 1 - u1 - u2 also varies,
//   ds² = 2(du1² + du2² + du1 du2).
// A Dijkstra pass over a lattice covering the simplex (plus margin) seeds a
// polyline, which is then relaxed to the continuous geodesic; the lattice is
// refined until every σ_ij changes by less than rel_tol between levels.

#include <array>

#include "tern/params.hpp"

namespace tern {

struct CalibrationOptions {
  double rel_tol = 0.005;
  int max_levels = 3;
  int base_grid = 40;
  int base_path_points = 128;
};

struct CalibrationResult {
  SurfaceTensions sigma;
  bool converged = false;
  int levels_used = 0;
  double last_change = 0.0;  // max relative change at the final refinement
};

CalibrationResult calibrate_sigma(const WellParams& w, const CalibrationOptions& opt = {});

// Embedded length of a (du1, du2) step.
double simplex_metric_length(double du1, double du2);

// Scales c02 so the computed tensions approximate sigma = (1, target_ratio, 1)
// after normalizing s01 to 1. target_ratio must lie below 2 (the geodesic
// triangle inequality caps s02 at s01 + s12); values at or above the cap get
// the largest multiplier searched. Returns the fitted well.
WellParams fit_well_c02(double target_ratio, double c_base, const CalibrationOptions& opt = {});

}  // namespace tern
