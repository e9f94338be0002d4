#include "tern/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "tern/green.hpp"

namespace tern::lattice {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_unit(double x) { return x - std::round(x); }

// Γ-weighted mass coupling between two droplets.
double coupling(const sharp::MassPair& a, const sharp::MassPair& b, const InteractionMatrix& G) {
  return G.g11 * a.m1 * b.m1 + G.g12 * (a.m1 * b.m2 + a.m2 * b.m1) + G.g22 * a.m2 * b.m2;
}

std::vector<std::size_t> canonical_order(const DropletConfig& c) {
  std::vector<std::size_t> idx(c.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& da = c.droplets[a];
    const auto& db = c.droplets[b];
    if (da.x1 != db.x1) return da.x1 < db.x1;
    if (da.x2 != db.x2) return da.x2 < db.x2;
    if (da.mass.m1 != db.mass.m1) return da.mass.m1 < db.mass.m1;
    return da.mass.m2 < db.mass.m2;
  });
  return idx;
}

}  // namespace

double torus_distance(double a1, double a2, double b1, double b2) {
  return std::hypot(wrap_unit(a1 - b1), wrap_unit(a2 - b2));
}

void DropletConfig::validate() const {
  for (const auto& d : droplets) d.mass.validate();
  for (std::size_t k = 0; k < droplets.size(); ++k)
    for (std::size_t l = k + 1; l < droplets.size(); ++l)
      if (torus_distance(droplets[k].x1, droplets[k].x2, droplets[l].x1, droplets[l].x2) < 1e-12)
        throw std::invalid_argument("DropletConfig: coincident droplet positions");
}

DropletConfig make_config(const sharp::MassSplit& split, const std::vector<std::array<double, 2>>& positions,
                          const SurfaceTensions& sigma, const InteractionMatrix& Gamma) {
  if (split.size() != positions.size()) throw std::invalid_argument("make_config: size mismatch");
  DropletConfig c;
  c.droplets.reserve(split.size());
  for (std::size_t k = 0; k < split.size(); ++k) {
    Droplet d;
    d.mass = split[k];
    d.x1 = wrap_unit(positions[k][0]);
    d.x2 = wrap_unit(positions[k][1]);
    d.offset = coreshell::f0(split[k], sigma, Gamma).t_opt;
    c.droplets.push_back(d);
  }
  c.validate();
  return c;
}

double pair_energy(const DropletConfig& c, const InteractionMatrix& Gamma) {
  const auto order = canonical_order(c);
  double acc = 0.0;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto& da = c.droplets[order[a]];
      const auto& db = c.droplets[order[b]];
      const double g = green::green_point(wrap_unit(da.x1 - db.x1), wrap_unit(da.x2 - db.x2));
      // ordered double sum counts each unordered pair twice with weight 1/2
      acc += coupling(da.mass, db.mass, Gamma) * g;
    }
  return acc;
}

double F0(const DropletConfig& c, const SurfaceTensions& sigma, const InteractionMatrix& Gamma) {
  c.validate();
  const auto order = canonical_order(c);
  double self = 0.0;
  for (std::size_t i : order) self += coreshell::f0(c.droplets[i].mass, sigma, Gamma).value;
  return self + pair_energy(c, Gamma);
}

std::vector<std::array<double, 2>> position_gradient(const DropletConfig& c, const InteractionMatrix& Gamma) {
  c.validate();
  const std::size_t K = c.size();
  std::vector<std::array<double, 2>> grad(K, {0.0, 0.0});
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t l = 0; l < K; ++l) {
      if (l == k) continue;
      const auto& dk = c.droplets[k];
      const auto& dl = c.droplets[l];
      const auto g = green::green_gradient(wrap_unit(dk.x1 - dl.x1), wrap_unit(dk.x2 - dl.x2));
      const double w = coupling(dk.mass, dl.mass, Gamma);
      grad[k][0] += w * g[0];
      grad[k][1] += w * g[1];
    }
  return grad;
}

DropletConfig optimize_positions(const DropletConfig& c, const SurfaceTensions& sigma, const InteractionMatrix& Gamma,
                                 const OptimizeOptions& opt) {
  c.validate();
  DropletConfig cur = c;
  double mean_mass = 0.0;
  for (const auto& d : cur.droplets) mean_mass += d.mass.total();
  mean_mass /= std::max<std::size_t>(1, cur.size());
  double rate = opt.rate > 0.0 ? opt.rate : 1e-2 / std::max(mean_mass, 1e-300);

  double energy = pair_energy(cur, Gamma);
  for (long it = 0; it < opt.max_steps; ++it) {
    const auto grad = position_gradient(cur, Gamma);
    double gnorm = 0.0;
    for (const auto& g : grad) gnorm = std::max({gnorm, std::abs(g[0]), std::abs(g[1])});
    if (gnorm < opt.gradient_tolerance) break;
    bool accepted = false;
    for (int bt = 0; bt < 40 && !accepted; ++bt) {
      DropletConfig trial = cur;
      for (std::size_t k = 0; k < trial.size(); ++k) {
        trial.droplets[k].x1 = wrap_unit(trial.droplets[k].x1 - rate * grad[k][0]);
        trial.droplets[k].x2 = wrap_unit(trial.droplets[k].x2 - rate * grad[k][1]);
      }
      const double te = pair_energy(trial, Gamma);
      if (te < energy) {
        cur = std::move(trial);
        energy = te;
        accepted = true;
        rate *= 1.5;
      } else {
        rate *= 0.5;  // halving backtracking
      }
    }
    if (!accepted) break;
  }
  (void)sigma;
  return cur;
}

HexStats hexagonality(const DropletConfig& c) {
  if (c.size() < 2) throw std::invalid_argument("hexagonality: need at least two droplets");
  c.validate();
  std::vector<double> nn(c.size(), std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t l = 0; l < c.size(); ++l) {
      if (k == l) continue;
      nn[k] = std::min(nn[k], torus_distance(c.droplets[k].x1, c.droplets[k].x2, c.droplets[l].x1, c.droplets[l].x2));
    }
  HexStats s;
  for (double d : nn) s.mean_nn += d;
  s.mean_nn /= static_cast<double>(nn.size());
  double var = 0.0;
  for (double d : nn) var += (d - s.mean_nn) * (d - s.mean_nn);
  var /= static_cast<double>(nn.size());
  s.cv = std::sqrt(var) / s.mean_nn;
  return s;
}

namespace {

// Signed-disk decomposition of one droplet's species-i region at unit scale:
// the annulus is B(0, r1) minus B((offset,0), r2), the core is B((offset,0), r2).
struct SignedDisk {
  double cx, cy, r, sign;
};

std::vector<SignedDisk> species_disks(const Droplet& d, int species) {
  std::vector<SignedDisk> out;
  const double m1 = d.mass.m1, m2 = d.mass.m2;
  if (species == 0) {
    if (m1 <= 0.0) return out;
    if (m2 <= 0.0) {
      out.push_back({0.0, 0.0, std::sqrt(m1 / kPi), 1.0});
    } else {
      out.push_back({0.0, 0.0, std::sqrt((m1 + m2) / kPi), 1.0});
      out.push_back({d.offset, 0.0, std::sqrt(m2 / kPi), -1.0});
    }
  } else {
    if (m2 <= 0.0) return out;
    const double r2 = std::sqrt(m2 / kPi);
    out.push_back({m1 > 0.0 ? d.offset : 0.0, 0.0, r2, 1.0});
  }
  return out;
}

// Gauss-Legendre nodes/weights on [0,1] (6 points).
constexpr int kRadialNodes = 6;
constexpr double kGaussX[kRadialNodes] = {0.03376524289842399, 0.16939530676686776, 0.3806904069584015,
                                          0.6193095930415985,  0.8306046932331322,  0.9662347571015760};
constexpr double kGaussW[kRadialNodes] = {0.08566224618958517, 0.18038078652406930, 0.23395696728634552,
                                          0.23395696728634552, 0.18038078652406930, 0.08566224618958517};
constexpr int kAngularNodes = 12;

// ∬_{D×E} R(eta (x - y)) dx dy over two unit-scale disks (smooth integrand).
double disk_pair_regular(const SignedDisk& D, const SignedDisk& E, double eta, const green::Ewald& ew) {
  double acc = 0.0;
  for (int si = 0; si < kRadialNodes; ++si)
    for (int ai = 0; ai < kAngularNodes; ++ai) {
      const double rho1 = D.r * std::sqrt(kGaussX[si]);
      const double phi1 = 2.0 * kPi * (ai + 0.5) / kAngularNodes;
      const double x1 = D.cx + rho1 * std::cos(phi1), y1 = D.cy + rho1 * std::sin(phi1);
      const double w1 = kGaussW[si] / kAngularNodes;
      for (int sj = 0; sj < kRadialNodes; ++sj)
        for (int aj = 0; aj < kAngularNodes; ++aj) {
          const double rho2 = E.r * std::sqrt(kGaussX[sj]);
          const double phi2 = 2.0 * kPi * (aj + 0.5) / kAngularNodes;
          const double x2 = E.cx + rho2 * std::cos(phi2), y2 = E.cy + rho2 * std::sin(phi2);
          const double w2 = kGaussW[sj] / kAngularNodes;
          acc += w1 * w2 * ew.regular_part(eta * (x1 - x2), eta * (y1 - y2));
        }
    }
  return acc * (kPi * D.r * D.r) * (kPi * E.r * E.r);
}

double droplet_regular_term(const Droplet& d, int si, int sj, double eta, const green::Ewald& ew) {
  double acc = 0.0;
  for (const auto& D : species_disks(d, si))
    for (const auto& E : species_disks(d, sj)) acc += D.sign * E.sign * disk_pair_regular(D, E, eta, ew);
  return acc;
}

}  // namespace

EtaEnergies sharp_E_eta_and_remainder(const DropletConfig& c, double eta, const SurfaceTensions& sigma,
                                      const InteractionMatrix& Gamma, double ebar) {
  c.validate();
  if (!(eta > 0.0) || !(eta < 1.0)) throw std::invalid_argument("sharp_E_eta: eta must lie in (0,1)");
  // droplets must stay disjoint at scale eta
  std::vector<double> outer_radius(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) outer_radius[k] = std::sqrt(c.droplets[k].mass.total() / kPi);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t l = k + 1; l < c.size(); ++l) {
      const double dist =
          torus_distance(c.droplets[k].x1, c.droplets[k].x2, c.droplets[l].x1, c.droplets[l].x2);
      if (dist <= eta * (outer_radius[k] + outer_radius[l]))
        throw std::invalid_argument("sharp_E_eta: droplets overlap at scale eta");
    }

  const auto& ew = green::standard();
  const double logeta = std::abs(std::log(eta));
  double leading = 0.0, phi1 = 0.0;
  for (const auto& d : c.droplets) {
    leading += sharp::e0(d.mass, sigma, Gamma);
    // log-kernel integrals at the droplet's own offset
    double i11 = 0.0, i12 = 0.0, i22 = 0.0;
    if (d.mass.m1 > 0.0 && d.mass.m2 > 0.0) {
      const auto g = coreshell::CoreShellGeometry::from_masses(d.mass.m1, d.mass.m2, d.offset);
      i11 = coreshell::I11(g);
      i12 = coreshell::I12(g);
      i22 = coreshell::I22(g.r2);
    } else if (d.mass.m1 > 0.0) {
      i11 = coreshell::I22(std::sqrt(d.mass.m1 / kPi));
    } else {
      i22 = coreshell::I22(std::sqrt(d.mass.m2 / kPi));
    }
    phi1 += 0.5 * Gamma.g11 * (i11 + droplet_regular_term(d, 0, 0, eta, ew));
    phi1 += Gamma.g12 * (i12 + droplet_regular_term(d, 0, 1, eta, ew));
    phi1 += 0.5 * Gamma.g22 * (i22 + droplet_regular_term(d, 1, 1, eta, ew));
  }
  const double phi2 = pair_energy(c, Gamma);

  EtaEnergies out;
  out.E_eta = leading + (phi1 + phi2) / logeta;
  out.F_eta = logeta * (out.E_eta - ebar);
  return out;
}

void write_config_json(const std::string& path, const DropletConfig& c, const SurfaceTensions& sigma,
                       const InteractionMatrix& Gamma) {
  nlohmann::json j;
  j["droplets"] = nlohmann::json::array();
  for (const auto& d : c.droplets) {
    j["droplets"].push_back({{"m1", d.mass.m1}, {"m2", d.mass.m2}, {"x", {d.x1, d.x2}}, {"offset", d.offset}});
  }
  j["F0"] = F0(c, sigma, Gamma);
  const auto grad = position_gradient(c, Gamma);
  double gnorm = 0.0;
  for (const auto& g : grad) gnorm = std::max({gnorm, std::abs(g[0]), std::abs(g[1])});
  j["gradient_norm"] = gnorm;
  if (c.size() >= 2) {
    const auto hex = hexagonality(c);
    j["nearest_neighbour"] = {{"mean", hex.mean_nn}, {"cv", hex.cv}};
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_config_json: cannot open " + path);
  os << j.dump(2) << "\n";
}

}  // namespace tern::lattice
