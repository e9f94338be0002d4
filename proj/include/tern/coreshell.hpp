#pragma once
// Logarithmic interaction integrals over core-shell geometries and the
// next-order placement optimization. Conventions: outer disk B1 of radius r1
// centred at the origin, inner disk B2 of radius r2 centred at (t, 0),
// annulus A1 = B1 \ B2, core A2 = B2. All integrals carry the 1/(2π) log
// kernel normalization,
//   I_ij = (1/2π) ∫_{A_i} ∫_{A_j} log(1/|x-y|) dx dy.
// Whenever one body is a disk that does not contain the singularity the
// inner integral collapses through the harmonic mean-value property; what
// remains is computed by adaptive quadrature in polar coordinates around the
// singular point (relative tolerance 1e-8).

#include <string>

#include "tern/params.hpp"
#include "tern/sharp.hpp"

namespace tern::coreshell {

struct CoreShellGeometry {
  double r1 = 1.0;
  double r2 = 0.5;
  double t = 0.0;  // centre offset of the inner disk along the x-axis

  // throws unless 0 < r2 < r1 and |t| <= r1 - r2 (containment)
  void validate() const;
  static CoreShellGeometry from_masses(double m1, double m2, double t = 0.0);
};

// Disk self-interaction (1/2π) ∬_{B_r × B_r} log 1/|x-y|.
double I22(double r2);

// Annulus-core interaction for the given geometry; even in t and strictly
// decreasing in |t|.
double I12(const CoreShellGeometry& g);

// d I12 / dt, from the quadrature of (m2/2π) ∫_{B1} (x1-t)/|x-(t,0)|² dx;
// exactly 0 at t = 0, strictly negative for t > 0.
double dI12_dt(const CoreShellGeometry& g);

// Annulus self-interaction, computed by an independent radial/arc reduction
// (not through the I11 = I_B1B1 - 2 I12 - I22 identity, which tests use as a
// cross-check).
double I11(const CoreShellGeometry& g);

// ∫_{B_{r1}} log(1/|x-p|) dx for |p| = t <= r1 (polar quadrature around p).
double disk_log_potential_integral(double r1, double t);

enum class PlacementTag { Concentric, Tangent, Indifferent, SingleBubble };
const char* placement_name(PlacementTag t);

struct F0Result {
  double value = 0.0;
  double t_opt = 0.0;
  PlacementTag tag = PlacementTag::Indifferent;
};

// Offset-dependent objective Σ_ij (Γ_ij/2) [ I_ij(t) + m_i m_j R(0) ]
// evaluated at a prescribed offset (used by tests and by the lattice module
// when droplets carry non-optimal offsets).
double f0_objective(const sharp::MassPair& m, const InteractionMatrix& Gamma, double t);

// The placement minimum: concentric for G11 > G12, tangent for G11 < G12,
// offset-indifferent at equality. Single-species masses take a plain disk.
// Requires the core-shell regime when both masses are positive.
F0Result f0(const sharp::MassPair& m, const SurfaceTensions& sigma, const InteractionMatrix& Gamma);

// CSV: m1,m2,G11,G12,G22,t_opt,tag,f0
void write_f0_csv(const std::string& path, const sharp::MassPair& m, const InteractionMatrix& Gamma,
                  const F0Result& r);

}  // namespace tern::coreshell
