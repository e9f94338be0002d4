#pragma once
// Finite droplet configurations on the torus and their interaction
// functional
//   F0 = Σ_k f0(m^k) + Σ_{k≠ℓ} Σ_ij (Γ_ij/2) m_i^k m_j^ℓ G(x^k - x^ℓ),
// its position gradient, local minimization by backtracking descent,
// nearest-neighbour regularity diagnostics, and the finite-scale energy
// E_eta of a parametric droplet configuration together with the remainder
// F_eta = |log eta| (E_eta - ebar0).

#include <array>
#include <string>
#include <vector>

#include "tern/coreshell.hpp"
#include "tern/params.hpp"
#include "tern/sharp.hpp"

namespace tern::lattice {

struct Droplet {
  sharp::MassPair mass;
  double x1 = 0.0, x2 = 0.0;  // torus position
  double offset = 0.0;        // core offset, frozen at the f0 optimum by default
};

struct DropletConfig {
  std::vector<Droplet> droplets;

  std::size_t size() const { return droplets.size(); }
  void validate() const;  // pairwise distinct positions, valid masses
};

// Builds a config from a mass split: positions given, offsets at their
// f0-optimal values.
DropletConfig make_config(const sharp::MassSplit& split, const std::vector<std::array<double, 2>>& positions,
                          const SurfaceTensions& sigma, const InteractionMatrix& Gamma);

// Γ-weighted pair energy Σ_{k≠ℓ} Σ_ij (Γ_ij/2) m_i^k m_j^ℓ G(x^k - x^ℓ).
// Droplets are summed in a canonical internal order, so the value is exactly
// permutation invariant.
double pair_energy(const DropletConfig& c, const InteractionMatrix& Gamma);

double F0(const DropletConfig& c, const SurfaceTensions& sigma, const InteractionMatrix& Gamma);

// ∂F0/∂x^k; the per-droplet f0 terms carry no position dependence.
std::vector<std::array<double, 2>> position_gradient(const DropletConfig& c, const InteractionMatrix& Gamma);

struct OptimizeOptions {
  long max_steps = 5000;
  double rate = -1.0;             // < 0: 1e-2 / mean droplet mass
  double gradient_tolerance = 1e-8;
};

// Backtracking gradient descent with periodic wrap; the pair energy never
// increases on an accepted step.
DropletConfig optimize_positions(const DropletConfig& c, const SurfaceTensions& sigma, const InteractionMatrix& Gamma,
                                 const OptimizeOptions& opt = {});

struct HexStats {
  double mean_nn = 0.0;
  double cv = 0.0;  // coefficient of variation of nearest-neighbour distances
};

HexStats hexagonality(const DropletConfig& c);

double torus_distance(double a1, double a2, double b1, double b2);

struct EtaEnergies {
  double E_eta = 0.0;
  double F_eta = 0.0;
};

// E_eta of the parametric rescaled configuration:
//   Σ_k e0(m^k) + |log eta|^{-1} [ Φ1(eta) + Φ2 ],
// Φ1 from the core-shell integrals plus the droplet-scale quadrature of the
// Green's function regular part (which tends to m_i m_j R(0)), Φ2 from point
// Green's values at the droplet separations. Throws when droplets overlap at
// scale eta. F_eta = |log eta| (E_eta - ebar).
EtaEnergies sharp_E_eta_and_remainder(const DropletConfig& c, double eta, const SurfaceTensions& sigma,
                                      const InteractionMatrix& Gamma, double ebar);

// JSON dump: positions, masses, offsets, F0, gradient norm, hex stats.
void write_config_json(const std::string& path, const DropletConfig& c, const SurfaceTensions& sigma,
                       const InteractionMatrix& Gamma);

}  // namespace tern::lattice
