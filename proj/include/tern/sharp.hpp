#pragma once
// Sharp-interface quantities in the core-shell regime s02 >= s01 + s12:
// the single-cluster energy e0, the optimal splitting of the total masses
// into finitely many clusters, the per-cluster mass lower bound and the
// resulting component-count bound, merging tests, Young's law angles, the
// inner-cone constant, and the critical-mass equations for coexistence of a
// core shell with a single bubble.

#include <string>
#include <vector>

#include "tern/params.hpp"

namespace tern::sharp {

struct MassPair {
  double m1 = 0.0;
  double m2 = 0.0;

  double total() const { return m1 + m2; }
  void validate() const;  // nonnegative, not both zero
};

using MassSplit = std::vector<MassPair>;

// Cluster energy: 2 s01 sqrt(pi(m1+m2)) + 2 s12 sqrt(pi m2)
//               + [G11 m1^2 + 2 G12 m1 m2 + G22 m2^2]/(4 pi).
// One expression serves all mass arms: at m2 = 0 it is the single bubble of
// species 1; at m1 = 0 it reads 2(s01+s12)sqrt(pi m2) + ..., which equals the
// degenerate-regime single bubble of species 2 and is the collapsed-shell
// infimum when s02 exceeds the sum. Requires the core-shell regime.
double e0(const MassPair& m, const SurfaceTensions& sigma, const InteractionMatrix& Gamma);

// d e0 / d m_i for strictly positive masses (m2 derivative diverges at 0).
std::pair<double, double> e0_grad(const MassPair& m, const SurfaceTensions& sigma, const InteractionMatrix& Gamma);

// Smallest admissible total mass of any cluster in a minimizing split:
//   32 pi^3 s01^2 / ((1+sqrt 2)^2 (G11+2G12+G22)^2 (M1+M2)^2),
// +infinity when the interaction vanishes.
double mass_lower_bound(double M1, double M2, double s01, const InteractionMatrix& Gamma);

// ceil((M1+M2)/mass_lower_bound); 1 for vanishing interaction.
int component_bound(double M1, double M2, double s01, const InteractionMatrix& Gamma);

// 2 s01 sqrt(pi) (sqrt(m1) + sqrt(m2) - sqrt(m1+m2)): the energy drop from
// merging opposite-species single bubbles into one core shell.
double merge_gain(double m1, double m2, double s01);

struct Ebar0Options {
  int max_components = 12;       // additional cap on the component bound
  int random_starts = 6;
  unsigned long seed = 2024;
  int max_iterations = 4000;
  double kkt_tolerance = 1e-10;
  int lattice_levels = 10;       // per-species composition resolution for certification
};

struct Ebar0Result {
  double value = 0.0;
  MassSplit split;               // canonical order: descending total, then m1
  int components = 0;
  double certification_gap = 0.0;  // value - best coarse-lattice candidate (<= ~0)
  double kkt_residual = 0.0;
};

// inf over finite splittings of sum e0(m^k): multi-start projected descent
// over the per-species mass simplexes for each candidate component count,
// followed by greedy merge improvement, certified against a coarse lattice
// enumeration. Starts run in parallel with a deterministic reduction.
Ebar0Result ebar0(double M1, double M2, const SurfaceTensions& sigma, const InteractionMatrix& Gamma,
                  const Ebar0Options& opt = {});

struct YoungsAngles {
  double theta0 = 0.0, theta1 = 0.0, theta2 = 0.0;
  bool degenerate = false;
};

// The triple with sin(theta1)/s02 = sin(theta2)/s01 = sin(theta0)/s12 and
// theta0+theta1+theta2 = 2 pi, each in (0, pi), by bisection; residuals below
// 1e-12. A degenerate triangle returns the limiting (0, pi, pi) pattern with
// the flag set.
YoungsAngles youngs_angles(const SurfaceTensions& sigma);

// Root in (0, pi/2) of 1 - sin(a) - sqrt((pi/2) sin(2a)) = 0.
double inner_cone_alpha0();

struct CoexistenceRoots {
  std::vector<double> f1_roots;  // critical outer-annulus masses in (0, M1)
  std::vector<double> f2_roots;  // critical inner-disk masses in (0, M2)
};

// Critical masses for a core shell coexisting with a single bubble:
// f1' roots located through the squared 8th-order polynomial and filtered
// against the original equation; f2' roots by bracketed bisection (the
// boundary limits are +inf at 0 and -inf at M2).
CoexistenceRoots coexistence_critical_masses(double M1, double M2, const SurfaceTensions& sigma,
                                             const InteractionMatrix& Gamma);

double f1_prime(double eta, double M1, double M2, const SurfaceTensions& sigma, const InteractionMatrix& Gamma);
double f2_prime(double eta, double M1, double M2, const SurfaceTensions& sigma, const InteractionMatrix& Gamma);

// Weighted perimeter difference between the core shell with species 2 inside
// (case a) and the flipped orientation (case b), evaluated from the two
// closed expressions; positive for m1 > 0 in the degenerate regime.
double annulus_orientation_gap(double m1, double m2, const SurfaceTensions& sigma);

// CSV table: M1,M2,s01,s02,s12,G11,G12,G22,K,value,gap,split...
void write_split_csv(const std::string& path, double M1, double M2, const SurfaceTensions& sigma,
                     const InteractionMatrix& Gamma, const Ebar0Result& result);

}  // namespace tern::sharp
