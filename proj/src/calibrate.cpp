#include "tern/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "tern/well.hpp"

namespace tern {

double simplex_metric_length(double du1, double du2) {
  return std::sqrt(2.0 * (du1 * du1 + du2 * du2 + du1 * du2));
}

namespace {

struct P2 {
  double x, y;
};

double sqrt_well(const P2& p, const WellParams& w) { return std::sqrt(std::max(0.0, triple_well(p.x, p.y, w))); }

// Simpson-sampled segment energy sqrt(2) ∫ sqrt(W) ds.
double segment_energy(const P2& a, const P2& b, const WellParams& w) {
  const double len = simplex_metric_length(b.x - a.x, b.y - a.y);
  const P2 m{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  return std::numbers::sqrt2 * len * (sqrt_well(a, w) + 4.0 * sqrt_well(m, w) + sqrt_well(b, w)) / 6.0;
}

double path_energy(const std::vector<P2>& path, const WellParams& w) {
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) e += segment_energy(path[i], path[i + 1], w);
  return e;
}

// Lattice over [-margin, 1+margin]² restricted to u1+u2 <= 1+margin, wells on
// lattice points. 16-direction stencil.
struct Lattice {
  int n = 0;       // subdivisions of [0,1]
  int k = 0;       // margin cells
  int side = 0;    // nodes per axis
  double h = 0.0;

  int index(int i, int j) const { return i * side + j; }
  bool valid(int i, int j) const {
    if (i < 0 || j < 0 || i >= side || j >= side) return false;
    return coord(i) + coord(j) <= 1.0 + k * h + 1e-12;
  }
  double coord(int i) const { return (i - k) * h; }
};

std::vector<P2> dijkstra_path(const Lattice& lat, const WellParams& w, P2 from, P2 to) {
  static const int moves[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},  {-1, -1}, {1, -1}, {-1, 1},
                                   {2, 1},  {-2, -1}, {2, -1}, {-2, 1}, {1, 2},  {-1, -2}, {1, -2}, {-1, 2}};
  const int total = lat.side * lat.side;
  std::vector<double> dist(total, std::numeric_limits<double>::infinity());
  std::vector<int> prev(total, -1);
  auto node_of = [&](const P2& p) {
    const int i = static_cast<int>(std::lround(p.x / lat.h)) + lat.k;
    const int j = static_cast<int>(std::lround(p.y / lat.h)) + lat.k;
    return lat.index(i, j);
  };
  const int src = node_of(from), dst = node_of(to);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> queue;
  dist[src] = 0.0;
  queue.push({0.0, src});
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    if (v == dst) break;
    const int vi = v / lat.side, vj = v % lat.side;
    const P2 pv{lat.coord(vi), lat.coord(vj)};
    for (const auto& mv : moves) {
      const int ui = vi + mv[0], uj = vj + mv[1];
      if (!lat.valid(ui, uj)) continue;
      const P2 pu{lat.coord(ui), lat.coord(uj)};
      const double nd = d + segment_energy(pv, pu, w);
      const int u = lat.index(ui, uj);
      if (nd < dist[u]) {
        dist[u] = nd;
        prev[u] = v;
        queue.push({nd, u});
      }
    }
  }
  std::vector<P2> path;
  for (int v = dst; v != -1; v = prev[v]) path.push_back({lat.coord(v / lat.side), lat.coord(v % lat.side)});
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<P2> resample(const std::vector<P2>& path, int points) {
  std::vector<double> arc(path.size(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i)
    arc[i] = arc[i - 1] + simplex_metric_length(path[i].x - path[i - 1].x, path[i].y - path[i - 1].y);
  const double total = arc.back();
  std::vector<P2> out(points);
  std::size_t seg = 0;
  for (int p = 0; p < points; ++p) {
    const double target = total * p / (points - 1);
    while (seg + 2 < path.size() && arc[seg + 1] < target) ++seg;
    const double span = std::max(arc[seg + 1] - arc[seg], 1e-300);
    const double t = std::clamp((target - arc[seg]) / span, 0.0, 1.0);
    out[p] = {path[seg].x + t * (path[seg + 1].x - path[seg].x), path[seg].y + t * (path[seg + 1].y - path[seg].y)};
  }
  return out;
}

// Gradient descent with backtracking on the interior points; endpoints stay
// at the wells. Periodic arclength reparameterization keeps nodes spread out.
double relax_path(std::vector<P2>& path, const WellParams& w, int max_iters) {
  const std::size_t P = path.size();
  double energy = path_energy(path, w);
  double rate = 1e-2;
  std::vector<P2> grad(P);
  for (int iter = 0; iter < max_iters; ++iter) {
    const double fd = 1e-7;
    for (std::size_t i = 1; i + 1 < P; ++i) {
      auto local = [&](P2 q) { return segment_energy(path[i - 1], q, w) + segment_energy(q, path[i + 1], w); };
      grad[i].x = (local({path[i].x + fd, path[i].y}) - local({path[i].x - fd, path[i].y})) / (2 * fd);
      grad[i].y = (local({path[i].x, path[i].y + fd}) - local({path[i].x, path[i].y - fd})) / (2 * fd);
    }
    bool accepted = false;
    for (int bt = 0; bt < 30 && !accepted; ++bt) {
      std::vector<P2> trial = path;
      for (std::size_t i = 1; i + 1 < P; ++i) {
        trial[i].x -= rate * grad[i].x;
        trial[i].y -= rate * grad[i].y;
      }
      const double te = path_energy(trial, w);
      if (te < energy) {
        path = std::move(trial);
        energy = te;
        accepted = true;
        rate *= 1.3;
      } else {
        rate *= 0.5;
      }
    }
    if (!accepted) break;
    if (iter % 40 == 39) {
      path = resample(path, static_cast<int>(P));
      energy = path_energy(path, w);
    }
  }
  path = resample(path, static_cast<int>(path.size()));
  return path_energy(path, w);
}

double geodesic(const WellParams& w, P2 from, P2 to, int grid, int points, int relax_iters) {
  Lattice lat;
  lat.n = grid;
  lat.h = 1.0 / grid;
  lat.k = (grid * 3) / 20;  // ~0.15 margin
  lat.side = grid + 2 * lat.k + 1;
  auto path = dijkstra_path(lat, w, from, to);
  if (path.size() < 2) throw std::runtime_error("calibrate_sigma: no lattice path found");
  path = resample(path, points);
  return relax_path(path, w, relax_iters);
}

}  // namespace

CalibrationResult calibrate_sigma(const WellParams& w, const CalibrationOptions& opt) {
  w.validate();
  const P2 well0{0.0, 0.0}, well1{1.0, 0.0}, well2{0.0, 1.0};
  CalibrationResult res;
  std::array<double, 3> prev{0, 0, 0};
  for (int level = 0; level < opt.max_levels; ++level) {
    const int grid = opt.base_grid << level;
    const int points = opt.base_path_points << level;
    const int iters = 400;
    std::array<double, 3> cur;
    cur[0] = geodesic(w, well0, well1, grid, points, iters);  // σ01
    cur[1] = geodesic(w, well0, well2, grid, points, iters);  // σ02
    cur[2] = geodesic(w, well1, well2, grid, points, iters);  // σ12
    res.levels_used = level + 1;
    if (level > 0) {
      double change = 0.0;
      for (int i = 0; i < 3; ++i) change = std::max(change, std::abs(cur[i] - prev[i]) / cur[i]);
      res.last_change = change;
      if (change <= opt.rel_tol) {
        res.converged = true;
        res.sigma = {cur[0], cur[1], cur[2]};
        return res;
      }
    }
    prev = cur;
    res.sigma = {cur[0], cur[1], cur[2]};
  }
  res.converged = false;
  return res;
}

WellParams fit_well_c02(double target_ratio, double c_base, const CalibrationOptions& opt) {
  if (target_ratio < 1.0) throw std::invalid_argument("fit_well_c02: target ratio must be >= 1");
  WellParams w{c_base, c_base, c_base, 4.0 * c_base};
  if (target_ratio == 1.0) return w;
  CalibrationOptions fit_opt = opt;
  fit_opt.max_levels = std::min(opt.max_levels, 2);
  double lo = 1.0, hi = 1024.0;
  auto ratio_of = [&](double mult) {
    WellParams trial = w;
    trial.c02 = c_base * mult;
    const auto r = calibrate_sigma(trial, fit_opt);
    return r.sigma.s02 / r.sigma.s01;
  };
  if (target_ratio >= 2.0 || ratio_of(hi) < target_ratio) {
    w.c02 = c_base * hi;
    return w;  // at or beyond the geodesic cap; take the stiffest well searched
  }
  for (int it = 0; it < 18; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (ratio_of(mid) < target_ratio)
      lo = mid;
    else
      hi = mid;
  }
  w.c02 = c_base * std::sqrt(lo * hi);
  return w;
}

}  // namespace tern
