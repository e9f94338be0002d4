#include "tern/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tern/kernels.hpp"
#include "tern/well.hpp"

namespace tern {

void PhaseDensity::validate(double slack) const {
  u1.validate();
  u2.validate();
  if (u1.n() != u2.n()) throw std::invalid_argument("PhaseDensity: resolution mismatch");
  const double* a = u1.data();
  const double* b = u2.data();
  for (std::size_t i = 0; i < u1.size(); ++i) {
    if (a[i] < -slack || a[i] > 1.0 + slack || b[i] < -slack || b[i] > 1.0 + slack || a[i] + b[i] > 1.0 + slack)
      throw std::invalid_argument("PhaseDensity: sample outside [-slack, 1+slack]");
  }
}

namespace detail {

namespace {
constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

// Σ_k weight(k) applied to the Hermitian half spectrum, counting implicit
// conjugate partners.
template <class TermFn>
double mode_sum(const SpectralField& U, TermFn&& term) {
  const int n = U.n();
  const int cols = n / 2 + 1;
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    const int k1 = tern::detail::signed_freq(a, n);
    for (int c = 0; c < cols; ++c) {
      const int k2 = (c == n / 2) ? -n / 2 : c;
      const double w = (c == 0 || c == n / 2) ? 1.0 : 2.0;
      acc += w * term(k1, k2, a, c);
    }
  }
  return acc;
}
}  // namespace

double gradient_energy_from_spectra(const SpectralField& U1, const SpectralField& U2, double epsilon) {
  // (ε²/4) Σ_k 4π²|k|² ( |û1|² + |û2|² + |û1+û2|² )
  const double pref = epsilon * epsilon / 4.0;
  return pref * mode_sum(U1, [&](int k1, int k2, int a, int c) {
    const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    const auto z1 = U1.raw_at(a, c);
    const auto z2 = U2.raw_at(a, c);
    return kFourPiSq * kk * (std::norm(z1) + std::norm(z2) + std::norm(z1 + z2));
  });
}

double nonlocal_energy_from_spectra(const SpectralField& U1, const SpectralField& U2, double epsilon,
                                    const InteractionMatrix& gamma) {
  // Σ_ij (ε γ_ij/2) Σ_{k≠0} û_i(k) conj(û_j(k)) / (4π²|k|²)
  return mode_sum(U1, [&](int k1, int k2, int a, int c) {
    const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    if (kk == 0.0) return 0.0;
    const auto z1 = U1.raw_at(a, c);
    const auto z2 = U2.raw_at(a, c);
    const double cross = (z1 * std::conj(z2)).real();
    return (epsilon / 2.0) * (gamma.g11 * std::norm(z1) + 2.0 * gamma.g12 * cross + gamma.g22 * std::norm(z2)) /
           (kFourPiSq * kk);
  });
}

}  // namespace detail

EnergyBreakdown diffuse_energy(const PhaseDensity& u, const ModelParams& p) {
  if (u.u1.n() != u.u2.n()) throw std::invalid_argument("diffuse_energy: resolution mismatch");
  const auto U1 = transform(u.u1);
  const auto U2 = transform(u.u2);

  EnergyBreakdown e;
  e.gradient = detail::gradient_energy_from_spectra(U1, U2, p.epsilon);
  e.nonlocal = detail::nonlocal_energy_from_spectra(U1, U2, p.epsilon, p.gamma);

  const std::size_t n2 = u.u1.size();
  std::vector<double> wv(n2), unused(n2);
  kernels::map2(u.u1.data(), u.u2.data(), wv.data(), unused.data(), n2,
                [&](double a, double b) { return std::pair<double, double>{triple_well(a, b, p.well), 0.0}; });
  e.well = 0.5 * kernels::sum(wv.data(), n2) / static_cast<double>(n2);

  e.total = e.gradient + e.well + e.nonlocal;
  return e;
}

double droplet_energy_diffuse(const PhaseDensity& u, const ModelParams& p) {
  if (!p.eta) throw std::logic_error("droplet_energy_diffuse: eta is not set");
  return diffuse_energy(u, p).total / *p.eta;
}

}  // namespace tern
