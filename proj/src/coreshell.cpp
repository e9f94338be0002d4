#include "tern/coreshell.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "tern/green.hpp"

namespace tern::coreshell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-8;

// Adaptive Simpson on [a,b].
double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Interior potential of the unit-density disk of radius R:
// U(rho) = ∫_{B_R} log(1/|x-y|) dy at distance rho <= R from the centre.
// Radial reduction: the circle average of log(1/|x-y|) over |y| = s is
// log(1/max(rho, s)), so U has elementary pieces.
double disk_potential_interior(double R, double rho) {
  return kPi * R * R * std::log(1.0 / R) + kPi * (R * R - rho * rho) / 2.0;
}

// radial distance from p = (t,0) with |t| < R to the boundary of B_R in
// direction theta
double ray_to_circle(double R, double t, double theta) {
  const double s = t * std::sin(theta);
  return -t * std::cos(theta) + std::sqrt(std::max(0.0, R * R - s * s));
}

// ∫_0^a rho log(1/rho) d rho
double radial_log_piece(double a) {
  if (a <= 0.0) return 0.0;
  return a * a * (0.25 - 0.5 * std::log(a));
}

}  // namespace

void CoreShellGeometry::validate() const {
  if (!(r2 > 0.0) || !(r1 > r2)) throw std::invalid_argument("CoreShellGeometry: need 0 < r2 < r1");
  if (std::abs(t) > r1 - r2 + 1e-14) throw std::invalid_argument("CoreShellGeometry: inner disk not contained");
}

CoreShellGeometry CoreShellGeometry::from_masses(double m1, double m2, double t) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw std::invalid_argument("CoreShellGeometry: masses must be positive");
  CoreShellGeometry g;
  g.r1 = std::sqrt((m1 + m2) / kPi);
  g.r2 = std::sqrt(m2 / kPi);
  g.t = t;
  g.validate();
  return g;
}

double I22(double r2) {
  if (!(r2 > 0.0)) throw std::invalid_argument("I22: radius must be positive");
  // (1/2π) ∫_{B} U(|x|) dx reduced to one radial quadrature.
  auto integrand = [r2](double rho) { return disk_potential_interior(r2, rho) * rho; };
  return adaptive_simpson(integrand, 0.0, r2, kQuadTol * r2 * r2 * std::max(1.0, std::abs(std::log(r2))));
}

double disk_log_potential_integral(double r1, double t) {
  t = std::abs(t);
  if (!(r1 > 0.0) || t > r1 + 1e-14) throw std::invalid_argument("disk_log_potential_integral: need |p| <= r1");
  // polar around the singular point p: the radial integral is elementary,
  // leaving one smooth angular quadrature (even in theta).
  auto integrand = [&](double theta) { return radial_log_piece(ray_to_circle(r1, t, theta)); };
  return 2.0 * adaptive_simpson(integrand, 0.0, kPi, kQuadTol * r1 * r1);
}

double I12(const CoreShellGeometry& g) {
  CoreShellGeometry checked = g;
  checked.validate();
  const double m2 = kPi * g.r2 * g.r2;
  // mean-value collapse of the inner-disk integral (exact up to tangency):
  // I12 = (m2/2π) ∫_{B1} log 1/|x-p| dx - (m2/2π) ∫_{B2} log 1/|x-p| dx,
  // and the second integral is the disk potential at its own centre.
  const double own_centre = disk_potential_interior(g.r2, 0.0);
  return m2 / (2.0 * kPi) * (disk_log_potential_integral(g.r1, g.t) - own_centre);
}

double dI12_dt(const CoreShellGeometry& g) {
  CoreShellGeometry checked = g;
  checked.validate();
  if (g.t == 0.0) return 0.0;  // odd integrand
  const double m2 = kPi * g.r2 * g.r2;
  // (m2/2π) ∫_{B1} (x1-t)/|x-p|² dx in polar around p: the radial part
  // integrates to the ray length, leaving ∫ cos(theta) L(theta) d theta.
  auto integrand = [&](double theta) { return std::cos(theta) * ray_to_circle(g.r1, g.t, theta); };
  return m2 / (2.0 * kPi) * 2.0 * adaptive_simpson(integrand, 0.0, kPi, kQuadTol * g.r1);
}

double I11(const CoreShellGeometry& g) {
  CoreShellGeometry checked = g;
  checked.validate();
  const double t = std::abs(g.t);
  const double m2 = kPi * g.r2 * g.r2;
  // I11 = (1/2π) ∫_{A1} [ U_{B1}(|x|) - m2 log 1/|x-p| ] dx with both pieces
  // reduced to one-dimensional quadratures; independent of the set-algebra
  // identity I11 = I_B1B1 - 2 I12 - I22 used by tests.
  const double int_B1_U = 2.0 * kPi * adaptive_simpson(
      [&](double rho) { return disk_potential_interior(g.r1, rho) * rho; }, 0.0, g.r1,
      kQuadTol * g.r1 * g.r1 * std::max(1.0, std::abs(std::log(g.r1))));
  // ∫_{B2} U_{B1}(|x|) dx: radial function over an offset disk, via the arc
  // length of circles |x| = rho inside B2
  auto arc_integrand = [&](double rho) {
    if (t == 0.0 || rho <= std::max(0.0, g.r2 - t)) return 2.0 * kPi * rho * disk_potential_interior(g.r1, rho);
    const double cosang = (rho * rho + t * t - g.r2 * g.r2) / (2.0 * rho * t);
    if (cosang >= 1.0) return 0.0;
    const double ang = 2.0 * std::acos(std::max(-1.0, cosang));
    return ang * rho * disk_potential_interior(g.r1, rho);
  };
  double int_B2_U = 0.0;
  if (t == 0.0) {
    int_B2_U = adaptive_simpson(arc_integrand, 0.0, g.r2, kQuadTol * m2);
  } else {
    const double full_hi = std::max(0.0, g.r2 - t);  // circles entirely inside B2
    if (full_hi > 0.0) int_B2_U += adaptive_simpson(arc_integrand, 0.0, full_hi, kQuadTol * m2);
    int_B2_U += adaptive_simpson(arc_integrand, std::max(full_hi, t - g.r2), t + g.r2, kQuadTol * m2);
  }
  const double int_A1_logp = disk_log_potential_integral(g.r1, t) - disk_potential_interior(g.r2, 0.0);
  return (int_B1_U - int_B2_U - m2 * int_A1_logp) / (2.0 * kPi);
}

const char* placement_name(PlacementTag t) {
  switch (t) {
    case PlacementTag::Concentric: return "Concentric";
    case PlacementTag::Tangent: return "Tangent";
    case PlacementTag::Indifferent: return "Indifferent";
    case PlacementTag::SingleBubble: return "SingleBubble";
  }
  return "?";
}

double f0_objective(const sharp::MassPair& m, const InteractionMatrix& Gamma, double t) {
  m.validate();
  const double R0 = green::green_regular_part_origin();
  if (m.m1 <= 0.0 || m.m2 <= 0.0) {
    const double mass = m.m1 + m.m2;
    const double r = std::sqrt(mass / kPi);
    const double gii = m.m1 > 0.0 ? Gamma.g11 : Gamma.g22;
    return 0.5 * gii * (I22(r) + mass * mass * R0);
  }
  const auto g = CoreShellGeometry::from_masses(m.m1, m.m2, t);
  const double i22 = I22(g.r2);
  const double i12 = I12(g);
  const double i11 = I11(g);
  return 0.5 * Gamma.g11 * (i11 + m.m1 * m.m1 * R0) + Gamma.g12 * (i12 + m.m1 * m.m2 * R0) +
         0.5 * Gamma.g22 * (i22 + m.m2 * m.m2 * R0);
}

F0Result f0(const sharp::MassPair& m, const SurfaceTensions& sigma, const InteractionMatrix& Gamma) {
  m.validate();
  Gamma.validate();
  F0Result out;
  if (m.m1 <= 0.0 || m.m2 <= 0.0) {
    out.tag = PlacementTag::SingleBubble;
    out.t_opt = 0.0;
    out.value = f0_objective(m, Gamma, 0.0);
    return out;
  }
  if (!is_core_shell_regime(sigma))
    throw std::domain_error(
        "f0: placement is resolved only for core-shell minimizers (s02 >= s01 + s12); "
        "double-bubble interaction integrals are not provided");
  const auto g = CoreShellGeometry::from_masses(m.m1, m.m2, 0.0);
  const double reach = g.r1 - g.r2;
  if (Gamma.g11 > Gamma.g12) {
    out.tag = PlacementTag::Concentric;
    out.t_opt = 0.0;
  } else if (Gamma.g11 < Gamma.g12) {
    out.tag = PlacementTag::Tangent;
    out.t_opt = reach;
  } else {
    out.tag = PlacementTag::Indifferent;
    out.t_opt = 0.0;
  }
  out.value = f0_objective(m, Gamma, out.t_opt);
  return out;
}

void write_f0_csv(const std::string& path, const sharp::MassPair& m, const InteractionMatrix& Gamma,
                  const F0Result& r) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_f0_csv: cannot open " + path);
  os.precision(16);
  os << "m1,m2,G11,G12,G22,t_opt,tag,f0\n";
  os << m.m1 << "," << m.m2 << "," << Gamma.g11 << "," << Gamma.g12 << "," << Gamma.g22 << "," << r.t_opt << ","
     << placement_name(r.tag) << "," << r.value << "\n";
}

}  // namespace tern::coreshell
