#pragma once
// The diffuse free energy of the two evolving densities on the torus,
//   E(u) = (1/2) ∫ [ (ε²/2)|∇u|² + W(u) ]
//        + Σ_{i,j=1,2} (ε γ_ij / 2) ∬ G(x-y) u_i(x) u_j(y),
// with u = (u1, u2, u0), u0 = 1 - u1 - u2, so the gradient term carries all
// three components: |∇u|² = |∇u1|² + |∇u2|² + |∇(u1+u2)|².
// The gradient and nonlocal terms are exact mode sums; the well term is the
// grid quadrature (the same discrete energy is monitored by the flow).

#include "tern/grid.hpp"
#include "tern/params.hpp"

namespace tern {

struct PhaseDensity {
  GridField u1;
  GridField u2;

  int n() const { return u1.n(); }
  // Overshoot slack for diffuse dynamics; throws when exceeded.
  void validate(double slack = 0.25) const;
};

struct EnergyBreakdown {
  double gradient = 0.0;
  double well = 0.0;
  double nonlocal = 0.0;
  double total = 0.0;
};

EnergyBreakdown diffuse_energy(const PhaseDensity& u, const ModelParams& p);

// E_eta = E / eta, the droplet-scale normalization. Requires p.eta.
double droplet_energy_diffuse(const PhaseDensity& u, const ModelParams& p);

namespace detail {
// Mode-sum pieces shared with the flow (which keeps its own spectra).
// Both expect transforms of u1, u2 with coefficient convention of grid.hpp.
double gradient_energy_from_spectra(const SpectralField& U1, const SpectralField& U2, double epsilon);
double nonlocal_energy_from_spectra(const SpectralField& U1, const SpectralField& U2, double epsilon,
                                    const InteractionMatrix& gamma);
}  // namespace detail

}  // namespace tern
