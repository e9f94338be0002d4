#include "tern/well.hpp"

#include <algorithm>
#include <cmath>

namespace tern {

namespace {
// curvature booster q(v) = v^2 (1-v)^2 (1-2v)^2: zero with zero slope at the
// wells v in {0, 1} and zero on the barrier top v = 1/2
inline double boost(double v) {
  const double a = v * (1.0 - v) * (1.0 - 2.0 * v);
  return a * a;
}
inline double boost_deriv(double v) {
  // a(v) = v - 3v^2 + 2v^3
  const double a = v * (1.0 - v) * (1.0 - 2.0 * v);
  const double da = 1.0 - 6.0 * v + 6.0 * v * v;
  return 2.0 * a * da;
}
}  // namespace

double triple_well(double u1, double u2, const WellParams& w) {
  const double u0 = 1.0 - u1 - u2;
  const double pen = std::pow(std::max(0.0, -u0), 4) + std::pow(std::max(0.0, -u1), 4) +
                     std::pow(std::max(0.0, -u2), 4);
  return w.c01 * u0 * u0 * u1 * u1 + w.c02 * u0 * u0 * u2 * u2 + w.c12 * u1 * u1 * u2 * u2 +
         w.cq * (boost(u0) + boost(u1) + boost(u2)) + w.cb * pen;
}

std::pair<double, double> triple_well_grad(double u1, double u2, const WellParams& w) {
  const double u0 = 1.0 - u1 - u2;
  // d u0 / d u1 = d u0 / d u2 = -1
  double g1 = w.c01 * (2.0 * u0 * u0 * u1 - 2.0 * u0 * u1 * u1) - w.c02 * 2.0 * u0 * u2 * u2 +
              w.c12 * 2.0 * u1 * u2 * u2;
  double g2 = w.c02 * (2.0 * u0 * u0 * u2 - 2.0 * u0 * u2 * u2) - w.c01 * 2.0 * u0 * u1 * u1 +
              w.c12 * 2.0 * u2 * u1 * u1;
  g1 += w.cq * (boost_deriv(u1) - boost_deriv(u0));
  g2 += w.cq * (boost_deriv(u2) - boost_deriv(u0));
  const double p0 = std::max(0.0, -u0), p1 = std::max(0.0, -u1), p2 = std::max(0.0, -u2);
  g1 += w.cb * (4.0 * p0 * p0 * p0 - 4.0 * p1 * p1 * p1);
  g2 += w.cb * (4.0 * p0 * p0 * p0 - 4.0 * p2 * p2 * p2);
  return {g1, g2};
}

double well_hessian_bound(const WellParams& w) {
  // Sample Hess W on a grid slightly larger than the simplex; the well is a
  // polynomial so a modest sampling resolution is adequate for a bound used
  // only to size the stabilizer.
  const int N = 60;
  const double margin = 0.2;
  double bound = 0.0;
  const double h = 1e-5;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      const double u1 = -margin + (1.0 + 2.0 * margin) * i / N;
      const double u2 = -margin + (1.0 + 2.0 * margin) * j / N;
      if (u1 + u2 > 1.0 + margin) continue;
      auto [g1p, g2p] = triple_well_grad(u1 + h, u2, w);
      auto [g1m, g2m] = triple_well_grad(u1 - h, u2, w);
      auto [h1p, h2p] = triple_well_grad(u1, u2 + h, w);
      auto [h1m, h2m] = triple_well_grad(u1, u2 - h, w);
      const double w11 = (g1p - g1m) / (2 * h), w12 = (g2p - g2m) / (2 * h);
      const double w21 = (h1p - h1m) / (2 * h), w22 = (h2p - h2m) / (2 * h);
      // spectral norm of the symmetric 2x2
      const double tr = (w11 + w22) / 2.0;
      const double det = w11 * w22 - 0.25 * (w12 + w21) * (w12 + w21);
      const double disc = std::sqrt(std::max(0.0, tr * tr - det));
      bound = std::max(bound, std::abs(tr) + disc);
    }
  return bound;
}

}  // namespace tern
