#include "tern/green.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tern::green {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kTermCutoff = 1e-16;

double exp_int_e1(double z) { return -std::expint(-z); }

}  // namespace

Ewald::Ewald(double splitting) {
  if (splitting <= 0.0) throw std::invalid_argument("Ewald: splitting parameter must be positive");
  tau_ = splitting / (4.0 * kPi);
  // E₁(z) < e^{-z}: real shells until |n|²/4τ is past the cutoff.
  real_shells_ = 1;
  while (static_cast<double>(real_shells_ * real_shells_) / (4.0 * tau_) < -std::log(kTermCutoff) + 4.0)
    ++real_shells_;
  recip_shells_ = 1;
  while (4.0 * kPi * kPi * recip_shells_ * recip_shells_ * tau_ < -std::log(kTermCutoff) + 4.0) ++recip_shells_;
}

double Ewald::value(double x1, double x2) const {
  x1 -= std::round(x1);
  x2 -= std::round(x2);
  if (x1 * x1 + x2 * x2 < 1e-28) throw std::domain_error("green: evaluation at a lattice point");
  double real_sum = 0.0;
  for (int n1 = -real_shells_; n1 <= real_shells_; ++n1)
    for (int n2 = -real_shells_; n2 <= real_shells_; ++n2) {
      const double d1 = x1 - n1, d2 = x2 - n2;
      real_sum += exp_int_e1((d1 * d1 + d2 * d2) / (4.0 * tau_));
    }
  double recip_sum = 0.0;
  for (int k1 = -recip_shells_; k1 <= recip_shells_; ++k1)
    for (int k2 = -recip_shells_; k2 <= recip_shells_; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      recip_sum += std::exp(-4.0 * kPi * kPi * kk * tau_) * std::cos(2.0 * kPi * (k1 * x1 + k2 * x2)) /
                   (4.0 * kPi * kPi * kk);
    }
  return real_sum / (4.0 * kPi) + recip_sum - tau_;
}

std::array<double, 2> Ewald::gradient(double x1, double x2) const {
  x1 -= std::round(x1);
  x2 -= std::round(x2);
  if (x1 * x1 + x2 * x2 < 1e-28) throw std::domain_error("green: gradient at a lattice point");
  // d/dx (1/4π) E₁(|x-n|²/4τ) = -(1/2π) e^{-|x-n|²/4τ} (x-n)/|x-n|².
  double g1 = 0.0, g2 = 0.0;
  for (int n1 = -real_shells_; n1 <= real_shells_; ++n1)
    for (int n2 = -real_shells_; n2 <= real_shells_; ++n2) {
      const double d1 = x1 - n1, d2 = x2 - n2;
      const double r2 = d1 * d1 + d2 * d2;
      const double w = std::exp(-r2 / (4.0 * tau_)) / (2.0 * kPi * r2);
      g1 -= w * d1;
      g2 -= w * d2;
    }
  for (int k1 = -recip_shells_; k1 <= recip_shells_; ++k1)
    for (int k2 = -recip_shells_; k2 <= recip_shells_; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const double w =
          -std::exp(-4.0 * kPi * kPi * kk * tau_) * std::sin(2.0 * kPi * (k1 * x1 + k2 * x2)) / (2.0 * kPi * kk);
      g1 += w * k1;
      g2 += w * k2;
    }
  return {g1, g2};
}

double Ewald::regular_part_origin() const {
  double real_sum = 0.0;
  for (int n1 = -real_shells_; n1 <= real_shells_; ++n1)
    for (int n2 = -real_shells_; n2 <= real_shells_; ++n2) {
      if (n1 == 0 && n2 == 0) continue;
      real_sum += exp_int_e1(static_cast<double>(n1 * n1 + n2 * n2) / (4.0 * tau_));
    }
  double recip_sum = 0.0;
  for (int k1 = -recip_shells_; k1 <= recip_shells_; ++k1)
    for (int k2 = -recip_shells_; k2 <= recip_shells_; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      recip_sum += std::exp(-4.0 * kPi * kPi * kk * tau_) / (4.0 * kPi * kPi * kk);
    }
  return (std::log(4.0 * tau_) - kEulerGamma + real_sum) / (4.0 * kPi) + recip_sum - tau_;
}

double Ewald::regular_part(double x1, double x2) const {
  x1 -= std::round(x1);
  x2 -= std::round(x2);
  const double r = std::hypot(x1, x2);
  if (r < 1e-9) return regular_part_origin();
  return value(x1, x2) + std::log(r) / (2.0 * kPi);
}

const Ewald& standard() {
  static const Ewald instance(1.0);
  return instance;
}

double green_point(double x1, double x2) { return standard().value(x1, x2); }
std::array<double, 2> green_gradient(double x1, double x2) { return standard().gradient(x1, x2); }
double green_regular_part_origin() { return standard().regular_part_origin(); }

}  // namespace tern::green
