#include "tern/sharp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tern::sharp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

void require_core_shell(const SurfaceTensions& s) {
  if (!is_core_shell_regime(s))
    throw std::domain_error("sharp: operation requires the core-shell regime s02 >= s01 + s12");
}
}  // namespace

void MassPair::validate() const {
  if (m1 < 0.0 || m2 < 0.0 || !(m1 + m2 > 0.0)) throw std::invalid_argument("MassPair: need m1,m2 >= 0, not both 0");
}

double e0(const MassPair& m, const SurfaceTensions& sigma, const InteractionMatrix& Gamma) {
  require_core_shell(sigma);
  m.validate();
  const double perim = 2.0 * sigma.s01 * std::sqrt(kPi * (m.m1 + m.m2)) + 2.0 * sigma.s12 * std::sqrt(kPi * m.m2);
  const double inter = (Gamma.g11 * m.m1 * m.m1 + 2.0 * Gamma.g12 * m.m1 * m.m2 + Gamma.g22 * m.m2 * m.m2) / (4.0 * kPi);
  return perim + inter;
}

std::pair<double, double> e0_grad(const MassPair& m, const SurfaceTensions& sigma, const InteractionMatrix& Gamma) {
  const double inv_total = 1.0 / std::sqrt(m.m1 + m.m2);
  const double g1 = sigma.s01 * kSqrtPi * inv_total + (Gamma.g11 * m.m1 + Gamma.g12 * m.m2) / (2.0 * kPi);
  double g2 = sigma.s01 * kSqrtPi * inv_total + (Gamma.g12 * m.m1 + Gamma.g22 * m.m2) / (2.0 * kPi);
  g2 += m.m2 > 0.0 ? sigma.s12 * kSqrtPi / std::sqrt(m.m2) : std::numeric_limits<double>::infinity();
  return {g1, g2};
}

double mass_lower_bound(double M1, double M2, double s01, const InteractionMatrix& Gamma) {
  const double gsum = Gamma.g11 + 2.0 * Gamma.g12 + Gamma.g22;
  if (gsum <= 0.0) return std::numeric_limits<double>::infinity();
  const double denom = (1.0 + std::numbers::sqrt2) * (1.0 + std::numbers::sqrt2) * gsum * gsum * (M1 + M2) * (M1 + M2);
  return 32.0 * kPi * kPi * kPi * s01 * s01 / denom;
}

int component_bound(double M1, double M2, double s01, const InteractionMatrix& Gamma) {
  const double mlb = mass_lower_bound(M1, M2, s01, Gamma);
  if (!std::isfinite(mlb)) return 1;
  return static_cast<int>(std::ceil((M1 + M2) / mlb));
}

double merge_gain(double m1, double m2, double s01) {
  if (m1 < 0.0 || m2 < 0.0) throw std::invalid_argument("merge_gain: masses must be nonnegative");
  return 2.0 * s01 * kSqrtPi * (std::sqrt(m1) + std::sqrt(m2) - std::sqrt(m1 + m2));
}

// ---------------------------------------------------------------------------
// ebar0

namespace {

// Euclidean projection of v onto {x >= 0, sum x = target}.
void project_simplex(std::vector<double>& v, double target) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    css += u[i];
    const double t = (css - target) / (i + 1);
    if (u[i] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  if (rho == 0) {  // degenerate: put everything at the max coordinate
    theta = (css - target) / n;
  }
  for (auto& x : v) x = std::max(0.0, x - theta);
}

double split_energy(const MassSplit& split, const SurfaceTensions& s, const InteractionMatrix& G) {
  double acc = 0.0;
  for (const auto& m : split)
    if (m.total() > 0.0) acc += e0(m, s, G);
  return acc;
}

void canonicalize(MassSplit& split) {
  split.erase(std::remove_if(split.begin(), split.end(), [](const MassPair& m) { return m.total() <= 1e-13; }),
              split.end());
  std::sort(split.begin(), split.end(), [](const MassPair& a, const MassPair& b) {
    if (a.total() != b.total()) return a.total() > b.total();
    return a.m1 > b.m1;
  });
}

bool lexicographic_less(const MassSplit& a, const MassSplit& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].m1 != b[i].m1) return a[i].m1 < b[i].m1;
    if (a[i].m2 != b[i].m2) return a[i].m2 < b[i].m2;
  }
  return false;
}

struct DescentOutcome {
  double value = std::numeric_limits<double>::infinity();
  MassSplit split;
  double kkt = std::numeric_limits<double>::infinity();
};

// KKT residual of min sum e0 subject to per-species simplex constraints.
double kkt_residual(const MassSplit& split, double M1, double M2, const SurfaceTensions& s,
                    const InteractionMatrix& G) {
  (void)M1;
  (void)M2;
  const int K = static_cast<int>(split.size());
  double worst = 0.0;
  for (int species = 0; species < 2; ++species) {
    double lambda = 0.0;
    int free_count = 0;
    std::vector<double> grads(K);
    for (int k = 0; k < K; ++k) {
      auto g = e0_grad(split[k], s, G);
      grads[k] = species == 0 ? g.first : g.second;
      const double mass = species == 0 ? split[k].m1 : split[k].m2;
      if (mass > 1e-12) {
        lambda += grads[k];
        ++free_count;
      }
    }
    if (free_count == 0) continue;
    lambda /= free_count;
    for (int k = 0; k < K; ++k) {
      const double mass = species == 0 ? split[k].m1 : split[k].m2;
      if (mass > 1e-12)
        worst = std::max(worst, std::abs(grads[k] - lambda));
      else if (std::isfinite(grads[k]))
        worst = std::max(worst, std::max(0.0, lambda - grads[k]));
    }
  }
  return worst;
}

DescentOutcome projected_descent(MassSplit start, double M1, double M2, const SurfaceTensions& s,
                                 const InteractionMatrix& G, const Ebar0Options& opt) {
  const int K = static_cast<int>(start.size());
  MassSplit cur = std::move(start);
  double energy = split_energy(cur, s, G);
  double rate = 1e-2 * (M1 + M2);
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    // gradient, with the divergent sqrt slope clamped: boundary components
    // stay pinned through the projection
    std::vector<double> g1(K), g2(K);
    for (int k = 0; k < K; ++k) {
      MassPair probe = cur[k];
      const double floor2 = 1e-14 * (M1 + M2);
      if (probe.m2 < floor2) probe.m2 = floor2;
      if (probe.total() <= 0.0) {
        g1[k] = g2[k] = 0.0;
        continue;
      }
      auto g = e0_grad(probe, s, G);
      g1[k] = g.first;
      g2[k] = g.second;
    }
    bool accepted = false;
    for (int bt = 0; bt < 40 && !accepted; ++bt) {
      std::vector<double> t1(K), t2(K);
      for (int k = 0; k < K; ++k) {
        t1[k] = cur[k].m1 - rate * g1[k];
        t2[k] = cur[k].m2 - rate * g2[k];
      }
      project_simplex(t1, M1);
      project_simplex(t2, M2);
      MassSplit trial(K);
      for (int k = 0; k < K; ++k) trial[k] = {t1[k], t2[k]};
      const double te = split_energy(trial, s, G);
      if (te < energy - 1e-15 * std::abs(energy)) {
        cur = std::move(trial);
        energy = te;
        accepted = true;
        rate *= 1.4;
      } else {
        rate *= 0.5;
      }
    }
    if (!accepted) break;
    if (iter % 16 == 15 && kkt_residual(cur, M1, M2, s, G) < opt.kkt_tolerance) break;
  }
  DescentOutcome out;
  out.split = std::move(cur);
  out.value = energy;
  out.kkt = kkt_residual(out.split, M1, M2, s, G);
  return out;
}

// Greedy merge pass: merging two clusters always respects the constraints,
// and pays off when the interaction penalty is smaller than the perimeter
// saving. Repeats until no pair improves.
void merge_improve(MassSplit& split, double& value, const SurfaceTensions& s, const InteractionMatrix& G) {
  bool improved = true;
  while (improved && split.size() > 1) {
    improved = false;
    for (std::size_t a = 0; a < split.size() && !improved; ++a)
      for (std::size_t b = a + 1; b < split.size() && !improved; ++b) {
        MassSplit trial;
        trial.reserve(split.size() - 1);
        for (std::size_t k = 0; k < split.size(); ++k)
          if (k != a && k != b) trial.push_back(split[k]);
        trial.push_back({split[a].m1 + split[b].m1, split[a].m2 + split[b].m2});
        const double te = split_energy(trial, s, G);
        if (te < value - 1e-14 * std::abs(value)) {
          split = std::move(trial);
          value = te;
          improved = true;
        }
      }
  }
}

std::vector<MassSplit> build_starts(int K, double M1, double M2, const Ebar0Options& opt) {
  std::vector<MassSplit> starts;
  // equal split
  MassSplit eq(K);
  for (auto& m : eq) m = {M1 / K, M2 / K};
  starts.push_back(eq);
  if (K >= 2) {
    // all of species 2 in one cluster
    MassSplit onecore(K);
    for (int k = 0; k < K; ++k) onecore[k] = {M1 / K, k == 0 ? M2 : 0.0};
    starts.push_back(onecore);
    // species separated across clusters
    MassSplit separated(K);
    const int k1 = (K + 1) / 2;
    for (int k = 0; k < K; ++k)
      separated[k] = k < k1 ? MassPair{M1 / k1, 0.0} : MassPair{0.0, M2 / (K - k1)};
    starts.push_back(separated);
  }
  std::mt19937_64 rng(opt.seed + static_cast<unsigned long>(K));
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int r = 0; r < opt.random_starts; ++r) {
    MassSplit rnd(K);
    double w1 = 0.0, w2 = 0.0;
    std::vector<double> a(K), b(K);
    for (int k = 0; k < K; ++k) {
      a[k] = u(rng);
      b[k] = u(rng);
      w1 += a[k];
      w2 += b[k];
    }
    for (int k = 0; k < K; ++k) rnd[k] = {M1 * a[k] / w1, M2 * b[k] / w2};
    starts.push_back(rnd);
  }
  return starts;
}

// Enumerate compositions of `levels` units into K ordered parts, calling fn
// with each normalized composition.
template <class Fn>
void for_each_composition(int levels, int K, std::vector<int>& parts, int idx, int remaining, Fn&& fn) {
  if (idx == K - 1) {
    parts[idx] = remaining;
    fn(parts);
    return;
  }
  for (int take = 0; take <= remaining; ++take) {
    parts[idx] = take;
    for_each_composition(levels, K, parts, idx + 1, remaining - take, fn);
  }
}

double lattice_best(int K, double M1, double M2, const SurfaceTensions& s, const InteractionMatrix& G, int levels) {
  // keep the enumeration bounded; fall back to a coarser grid for larger K
  while (K > 2 && std::pow(levels + 1.0, 2.0 * (K - 1)) > 4e6) --levels;
  if (levels < 2) levels = 2;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> p1(K), p2(K);
  for_each_composition(levels, K, p1, 0, levels, [&](const std::vector<int>& c1) {
    for_each_composition(levels, K, p2, 0, levels, [&](const std::vector<int>& c2) {
      MassSplit split(K);
      for (int k = 0; k < K; ++k)
        split[k] = {M1 * c1[k] / static_cast<double>(levels), M2 * c2[k] / static_cast<double>(levels)};
      bool any = false;
      for (const auto& m : split) any |= m.total() > 0.0;
      if (!any) return;
      best = std::min(best, split_energy(split, s, G));
    });
  });
  return best;
}

}  // namespace

Ebar0Result ebar0(double M1, double M2, const SurfaceTensions& sigma, const InteractionMatrix& Gamma,
                  const Ebar0Options& opt) {
  require_core_shell(sigma);
  if (M1 < 0.0 || M2 < 0.0 || !(M1 + M2 > 0.0))
    throw std::invalid_argument("ebar0: masses must be nonnegative, not both zero");
  const int Kcap = std::min(component_bound(M1, M2, sigma.s01, Gamma), opt.max_components);

  Ebar0Result best;
  best.value = std::numeric_limits<double>::infinity();
  for (int K = 1; K <= Kcap; ++K) {
    auto starts = build_starts(K, M1, M2, opt);
    std::vector<DescentOutcome> outcomes(starts.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(starts.size()); ++i)
      outcomes[i] = projected_descent(starts[i], M1, M2, sigma, Gamma, opt);

    for (auto& oc : outcomes) {
      merge_improve(oc.split, oc.value, sigma, Gamma);
      canonicalize(oc.split);
      oc.value = split_energy(oc.split, sigma, Gamma);
      oc.kkt = kkt_residual(oc.split, M1, M2, sigma, Gamma);
      const bool better =
          !std::isfinite(best.value) || oc.value < best.value - 1e-14 * std::abs(best.value);
      const bool tie =
          std::isfinite(best.value) && std::abs(oc.value - best.value) <= 1e-14 * std::abs(best.value);
      if (better || (tie && lexicographic_less(oc.split, best.split))) {
        best.value = oc.value;
        best.split = oc.split;
        best.kkt_residual = oc.kkt;
      }
    }
  }
  best.components = static_cast<int>(best.split.size());

  double lattice = std::numeric_limits<double>::infinity();
  for (int K = 1; K <= std::min(Kcap, 6); ++K)
    lattice = std::min(lattice, lattice_best(K, M1, M2, sigma, Gamma, opt.lattice_levels));
  best.certification_gap = best.value - lattice;
  return best;
}

// ---------------------------------------------------------------------------
// Young's law

YoungsAngles youngs_angles(const SurfaceTensions& sigma) {
  sigma.validate();
  // phi_i = pi - theta_i are the angles of the triangle with side a_i
  // opposite phi_i: a0 = s12, a1 = s02, a2 = s01.
  const double a[3] = {sigma.s12, sigma.s02, sigma.s01};
  int imax = 0;
  if (a[1] > a[imax]) imax = 1;
  if (a[2] > a[imax]) imax = 2;
  const int j = (imax + 1) % 3, k = (imax + 2) % 3;
  const double cj = a[j] / a[imax], ck = a[k] / a[imax];

  const double slack = a[j] + a[k] - a[imax];
  if (slack <= 1e-12 * a[imax]) {
    // flat limit: the angle opposite the dominant side opens to pi,
    // so the corresponding theta collapses to zero.
    YoungsAngles out;
    out.degenerate = true;
    double th[3] = {kPi, kPi, kPi};
    th[imax] = 0.0;
    out.theta0 = th[0];
    out.theta1 = th[1];
    out.theta2 = th[2];
    return out;
  }

  auto g = [&](double phi) { return phi + std::asin(cj * std::sin(phi)) + std::asin(ck * std::sin(phi)) - kPi; };
  double lo = 1e-12, hi = kPi - 1e-12;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double phi_max = 0.5 * (lo + hi);
  double phi[3];
  phi[imax] = phi_max;
  phi[j] = std::asin(cj * std::sin(phi_max));
  phi[k] = std::asin(ck * std::sin(phi_max));
  YoungsAngles out;
  out.theta0 = kPi - phi[0];
  out.theta1 = kPi - phi[1];
  out.theta2 = kPi - phi[2];
  return out;
}

double inner_cone_alpha0() {
  auto f = [](double a) { return 1.0 - std::sin(a) - std::sqrt(kPi / 2.0 * std::sin(2.0 * a)); };
  double lo = 1e-8, hi = 1.0;  // f > 0 near 0, f(1) < 0; the interior root is unique
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Coexistence critical masses

double f1_prime(double eta, double M1, double M2, const SurfaceTensions& sigma, const InteractionMatrix& G) {
  return sigma.s01 * kSqrtPi * (1.0 / std::sqrt(M2 + eta) - 1.0 / std::sqrt(M1 - eta)) +
         (G.g11 * (2.0 * eta - M1) + G.g12 * M2) / (2.0 * kPi);
}

double f2_prime(double eta, double M1, double M2, const SurfaceTensions& sigma, const InteractionMatrix& G) {
  return kSqrtPi * (sigma.s01 / std::sqrt(M1 + eta) + sigma.s12 / std::sqrt(eta) - sigma.s02 / std::sqrt(M2 - eta)) +
         (G.g22 * (2.0 * eta - M2) + G.g12 * M1) / (2.0 * kPi);
}

namespace {

using Poly = std::vector<double>;  // coefficients, low order first

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_axpy(Poly a, const Poly& b, double scale) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

double poly_eval(const Poly& p, std::complex<double> z, std::complex<double>* value) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  *value = acc;
  return std::abs(acc);
}

// Durand-Kerner iteration; adequate for one degree-8 polynomial with
// well-scaled coefficients, and every candidate is re-verified against the
// original equation afterwards.
std::vector<std::complex<double>> poly_roots(Poly p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) return {};
  for (auto& c : p) c /= p.back();
  double radius = 0.0;
  for (int i = 0; i < deg; ++i) radius = std::max(radius, std::abs(p[i]));
  radius = 1.0 + radius;
  std::vector<std::complex<double>> roots(deg);
  const std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (int i = 0; i < deg; ++i) {
    acc *= seed;
    roots[i] = acc * radius / std::abs(acc);
    roots[i] *= std::pow(static_cast<double>(i + 1) / deg, 0.7);
  }
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0.0;
    for (int i = 0; i < deg; ++i) {
      std::complex<double> num;
      poly_eval(p, roots[i], &num);
      std::complex<double> den(1.0, 0.0);
      for (int j = 0; j < deg; ++j)
        if (j != i) den *= roots[i] - roots[j];
      if (std::abs(den) < 1e-300) den = 1e-300;
      const auto delta = num / den;
      roots[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14 * radius) break;
  }
  return roots;
}

}  // namespace

CoexistenceRoots coexistence_critical_masses(double M1, double M2, const SurfaceTensions& sigma,
                                             const InteractionMatrix& Gamma) {
  require_core_shell(sigma);
  if (!(M1 > 0.0) || !(M2 > 0.0)) throw std::invalid_argument("coexistence: masses must be positive");
  CoexistenceRoots out;

  // --- f1': candidates from the squared polynomial  A(x)^2 - 4 P(x) = 0,
  //     P = (M1-x)(M2+x),  Q = G11(2x-M1) + G12 M2,
  //     A = P Q^2 / (4 pi^3 s01^2) - (M1+M2).
  const Poly P{M1 * M2, M1 - M2, -1.0};
  const Poly Q{-Gamma.g11 * M1 + Gamma.g12 * M2, 2.0 * Gamma.g11};
  const double c = 1.0 / (4.0 * kPi * kPi * kPi * sigma.s01 * sigma.s01);
  Poly A = poly_mul(P, poly_mul(Q, Q));
  for (auto& x : A) x *= c;
  A[0] -= (M1 + M2);
  Poly F = poly_axpy(poly_mul(A, A), P, -4.0);

  const double scale = std::max(1.0, std::abs(f1_prime(M1 * 0.5, M1, M2, sigma, Gamma)));
  for (const auto& z : poly_roots(F)) {
    if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z.real()))) continue;
    double x = z.real();
    if (x <= 0.0 || x >= M1) continue;
    // polish on the original equation, then filter the squaring artifacts
    for (int it = 0; it < 60; ++it) {
      const double f = f1_prime(x, M1, M2, sigma, Gamma);
      const double h = 1e-7 * M1;
      const double d = (f1_prime(std::min(x + h, M1 * (1 - 1e-12)), M1, M2, sigma, Gamma) -
                        f1_prime(std::max(x - h, M1 * 1e-12), M1, M2, sigma, Gamma)) /
                       (2.0 * h);
      if (!std::isfinite(d) || d == 0.0) break;
      const double nx = x - f / d;
      if (!(nx > 0.0) || !(nx < M1)) break;
      if (std::abs(nx - x) < 1e-16 * M1) {
        x = nx;
        break;
      }
      x = nx;
    }
    if (x <= 0.0 || x >= M1) continue;
    if (std::abs(f1_prime(x, M1, M2, sigma, Gamma)) >= 1e-9 * scale) continue;
    const bool dup = std::any_of(out.f1_roots.begin(), out.f1_roots.end(),
                                 [&](double r) { return std::abs(r - x) < 1e-9 * M1; });
    if (!dup) out.f1_roots.push_back(x);
  }
  std::sort(out.f1_roots.begin(), out.f1_roots.end());

  // --- f2': bracketed bisection; the limits are +inf at 0+ and -inf at M2-.
  const int samples = 4000;
  double prev_x = M2 * 1e-10;
  double prev_f = f2_prime(prev_x, M1, M2, sigma, Gamma);
  for (int i = 1; i <= samples; ++i) {
    // denser sampling near both endpoints
    const double t = static_cast<double>(i) / samples;
    const double x = M2 * (0.5 - 0.5 * std::cos(kPi * t));
    const double xx = std::clamp(x, M2 * 1e-10, M2 * (1.0 - 1e-10));
    const double f = f2_prime(xx, M1, M2, sigma, Gamma);
    if (std::isfinite(prev_f) && std::isfinite(f) && prev_f * f < 0.0) {
      double lo = prev_x, hi = xx;
      double flo = prev_f;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f2_prime(mid, M1, M2, sigma, Gamma);
        if (flo * fm <= 0.0)
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      out.f2_roots.push_back(0.5 * (lo + hi));
    }
    prev_x = xx;
    prev_f = f;
  }
  return out;
}

double annulus_orientation_gap(double m1, double m2, const SurfaceTensions& sigma) {
  if (classify_regime(sigma) != Regime::CoreShellDegenerate)
    throw std::domain_error("annulus_orientation_gap: requires the degenerate core-shell regime");
  if (m1 < 0.0 || m2 < 0.0) throw std::invalid_argument("annulus_orientation_gap: masses must be nonnegative");
  const double case_a = 2.0 * kSqrtPi * (sigma.s12 * std::sqrt(m2) + sigma.s01 * std::sqrt(m1 + m2));
  const double case_b = 2.0 * kSqrtPi * (sigma.s12 * std::sqrt(m1) + sigma.s02 * std::sqrt(m1 + m2));
  return case_b - case_a;
}

void write_split_csv(const std::string& path, double M1, double M2, const SurfaceTensions& sigma,
                     const InteractionMatrix& Gamma, const Ebar0Result& result) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_split_csv: cannot open " + path);
  os.precision(16);
  os << "M1,M2,s01,s02,s12,G11,G12,G22,K,value,certification_gap,split\n";
  os << M1 << "," << M2 << "," << sigma.s01 << "," << sigma.s02 << "," << sigma.s12 << "," << Gamma.g11 << ","
     << Gamma.g12 << "," << Gamma.g22 << "," << result.components << "," << result.value << ","
     << result.certification_gap << ",\"";
  for (std::size_t k = 0; k < result.split.size(); ++k) {
    if (k) os << ";";
    os << "(" << result.split[k].m1 << " " << result.split[k].m2 << ")";
  }
  os << "\"\n";
}

}  // namespace tern::sharp
