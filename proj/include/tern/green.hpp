#pragma once
// Laplace Green's function of the unit torus, -ΔG = δ - 1 with mean zero,
// evaluated pointwise by Ewald summation. Near the origin
//   G(x) = (1/2π) log(1/|x|) + R(x),  R(0) the regular-part constant.
//
// Heat-kernel split at t = τ:
//   G(x) = (1/4π) Σ_n E₁(|x-n|²/4τ)
//        + Σ_{k≠0} e^{-4π²|k|²τ} cos(2πk·x) / (4π²|k|²)  -  τ,
// with E₁ the exponential integral. Both lattice sums are truncated once
// their terms drop below 1e-16; τ = s/(4π) balances the two at the default
// splitting parameter s = 1, and the value is independent of s.

#include <array>

namespace tern::green {

struct Ewald {
  explicit Ewald(double splitting = 1.0);

  // G(x) for x not on the integer lattice (throws std::domain_error there).
  double value(double x1, double x2) const;
  std::array<double, 2> gradient(double x1, double x2) const;

  // R(0) for the unit torus; deterministic, accurate to ~1e-14.
  double regular_part_origin() const;

  // R(x) = G(x) + (1/2π) log|x| for x ≠ 0 in the fundamental domain,
  // extended by R(0) at the origin. Smooth near 0; used for droplet-scale
  // self-interaction corrections.
  double regular_part(double x1, double x2) const;

  double tau() const { return tau_; }

 private:
  double tau_;
  int real_shells_;   // |n|∞ cutoff for the E₁ sum
  int recip_shells_;  // |k|∞ cutoff for the reciprocal sum
};

// Default-parameter singleton for callers that do not care about splitting.
const Ewald& standard();

double green_point(double x1, double x2);
std::array<double, 2> green_gradient(double x1, double x2);
double green_regular_part_origin();

}  // namespace tern::green
