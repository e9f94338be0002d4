#pragma once
// Model parameters: surface tensions, the derived pairwise weights, the
// interaction matrix and its droplet-scale rescaling, interface width and
// masses. Also the regime classification driven by which triangle
// inequality degenerates.

#include <optional>
#include <string>

namespace tern {

struct SurfaceTensions {
  double s01 = 1.0;
  double s02 = 1.0;
  double s12 = 1.0;

  void validate() const;  // all strictly positive
};

// b1 = s01 + s12 - s02, b2 = s02 + s12 - s01, b0 = s01 + s02 - s12.
struct BetaWeights {
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

BetaWeights beta_weights(const SurfaceTensions& s);
SurfaceTensions sigma_from_beta(const BetaWeights& b);  // inverse map, exact

enum class Regime {
  DoubleBubble,            // all triangle inequalities strict
  CoreShellDegenerate,     // s02 = s01 + s12
  CoreShellStrict,         // s02 > s01 + s12
  SingleBubblesDegenerate, // s12 = s01 + s02
  SingleBubblesStrict,     // s12 > s01 + s02
};

const char* regime_name(Regime r);

// Equalities detected at 1e-12 relative tolerance. The mirrored degeneracy
// s01 >= s02 + s12 (phase 1 insulated by phase 2) is not part of the tag
// set; callers must relabel the two minority species first, and a
// std::invalid_argument says so.
Regime classify_regime(const SurfaceTensions& s);

bool is_core_shell_regime(const SurfaceTensions& s);  // s02 >= s01 + s12 (tol)

struct InteractionMatrix {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;

  void validate() const;  // entries nonnegative
  InteractionMatrix scaled(double factor) const { return {g11 * factor, g12 * factor, g22 * factor}; }
};

// gamma = Gamma / (|log eta| eta^3) and its inverse.
InteractionMatrix gamma_from_Gamma(const InteractionMatrix& Gamma, double eta);
InteractionMatrix Gamma_from_gamma(const InteractionMatrix& gamma, double eta);

// Polynomial triple well in barycentric form, see well.hpp. cb is the
// quartic penalty keeping the state near the simplex; cq boosts the
// curvature at the minima (it vanishes at the wells and on the barrier
// tops, so it steepens dissolution without moving the tensions much).
struct WellParams {
  double c01 = 9.0;
  double c02 = 9.0;
  double c12 = 9.0;
  double cb = 36.0;
  double cq = 0.0;

  void validate() const;
};

struct ModelParams {
  SurfaceTensions sigma;
  InteractionMatrix gamma;  // raw interaction strengths as they enter the energy
  WellParams well;
  double epsilon = 0.01;
  std::optional<double> eta;
  double M1 = 0.12;
  double M2 = 0.04;

  void validate() const;
  InteractionMatrix Gamma() const;  // requires eta
};

// Plain-text configuration (TOML syntax subset): top-level scalars
// epsilon, eta, n, seed, masses = [M1, M2]; sections [sigma], [gamma] or
// [Gamma], [well], [flow]. Unknown keys are rejected.
struct ConfigFile {
  ModelParams params;
  int n = 256;
  unsigned long seed = 1;
  // flow overrides, negative = leave at default
  double dt = -1.0;
  double stabilizer = -1.0;
  long max_steps = -1;
  double noise_amplitude = -1.0;
};

ConfigFile read_config(const std::string& path);
void write_config(const std::string& path, const ConfigFile& cfg);

}  // namespace tern
