#include "tern/flow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "tern/field_io.hpp"
#include "tern/kernels.hpp"
#include "tern/well.hpp"

namespace tern {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

double gamma_spectral_norm(const InteractionMatrix& g) {
  const double tr = 0.5 * (g.g11 + g.g22);
  const double disc = std::sqrt(std::max(0.0, 0.25 * (g.g11 - g.g22) * (g.g11 - g.g22) + g.g12 * g.g12));
  return tr + disc;
}

}  // namespace

void FlowConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("FlowConfig: dt must be positive");
  if (window < 1) throw std::invalid_argument("FlowConfig: window must be >= 1");
  if (max_steps < 0) throw std::invalid_argument("FlowConfig: max_steps must be >= 0");
  if (noise_amplitude < 0.0) throw std::invalid_argument("FlowConfig: noise amplitude must be >= 0");
}

double auto_stabilizer(const ModelParams& p) {
  // Lipschitz bound of the explicit terms: (1/2)Hess W plus the interaction
  // operator, whose largest multiplier is at |k| = 1. Doubled for headroom.
  const double well_part = well_hessian_bound(p.well);  // == 2 * max |(1/2)W''|
  const double nonlocal_part = p.epsilon * gamma_spectral_norm(p.gamma) / kFourPiSq;
  return well_part + 2.0 * nonlocal_part;
}

FlowState init_random(const ModelParams& p, int n, const FlowConfig& cfg) {
  p.validate();
  cfg.validate();
  // clipping plus the mean correction absorb large overshoot (patchy seeds
  // are how dilute masses nucleate); beyond 0.5 the correction would push
  // samples past the slack band
  const double amp = cfg.noise_amplitude;
  if (amp > 0.75 || (1.0 - p.M1 - p.M2) < amp / 8.0)
    throw std::invalid_argument("init_random: noise amplitude incompatible with the masses");

  FlowState s;
  s.u.u1 = GridField(n);
  s.u.u2 = GridField(n);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> noise(-amp, amp);
  double* a = s.u.u1.data();
  double* b = s.u.u2.data();
  const std::size_t n2 = s.u.u1.size();
  std::vector<double> eta1(n2), eta2(n2);
  for (std::size_t i = 0; i < n2; ++i) {
    eta1[i] = noise(rng);
    eta2[i] = noise(rng);
  }
  if (cfg.noise_correlation > 0.0) {
    // low-pass the white noise to the requested correlation length and
    // restore the requested amplitude; correlated patches are what lets a
    // metastable dilute mixture nucleate
    const double len = cfg.noise_correlation / n;
    auto smooth = [&](std::vector<double>& field) {
      GridField g(n, std::move(field));
      auto filtered = spectral_apply(g, [len](int k1, int k2) {
        const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
        return std::exp(-2.0 * std::numbers::pi * std::numbers::pi * len * len * kk);
      });
      double peak = filtered.max_abs();
      if (peak <= 0.0) peak = 1.0;
      field.assign(filtered.data(), filtered.data() + n2);
      for (auto& x : field) x *= amp / peak;
    };
    smooth(eta1);
    smooth(eta2);
  }
  for (std::size_t i = 0; i < n2; ++i) {
    double v1 = p.M1 + eta1[i];
    double v2 = p.M2 + eta2[i];
    v1 = std::max(v1, 0.0);
    v2 = std::max(v2, 0.0);
    if (v1 + v2 > 1.0) {  // pointwise clip onto the simplex
      const double excess = (v1 + v2 - 1.0) / 2.0;
      v1 -= excess;
      v2 -= excess;
    }
    a[i] = v1;
    b[i] = v2;
  }
  kernels::add_scalar(a, p.M1 - kernels::sum(a, n2) / static_cast<double>(n2), n2);
  kernels::add_scalar(b, p.M2 - kernels::sum(b, n2) / static_cast<double>(n2), n2);
  s.mass1 = p.M1;
  s.mass2 = p.M2;
  return s;
}

void step(FlowState& s, const FlowConfig& cfg, const ModelParams& p) {
  const int n = s.u.n();
  const std::size_t n2 = s.u.u1.size();
  const int cols = n / 2 + 1;
  const std::size_t nspec = static_cast<std::size_t>(n) * cols;
  const double dt = cfg.dt;
  const double S = cfg.stabilizer >= 0.0 ? cfg.stabilizer : auto_stabilizer(p);

  // Spectra of the current state (cached across steps: the implicit solve
  // already produced the new spectrum, so only external mutations of u force
  // a fresh transform).
  if (!s.spec_valid || s.spec1.size() != nspec) {
    s.spec1.resize(nspec);
    s.spec2.resize(nspec);
    detail::fft_forward(n, s.u.u1.data(), s.spec1.data());
    detail::fft_forward(n, s.u.u2.data(), s.spec2.data());
    s.spec_valid = true;
  }
  std::vector<std::complex<double>>& U1 = s.spec1;
  std::vector<std::complex<double>>& U2 = s.spec2;

  // Per-thread scratch, sized on first use; avoids megabyte-scale allocation
  // churn in the hot loop.
  struct Scratch {
    std::vector<double> w1, w2, wval;
    std::vector<std::complex<double>> R1, R2;
    std::vector<double> row_acc;
  };
  thread_local Scratch ws;
  ws.w1.resize(n2);
  ws.w2.resize(n2);
  ws.wval.resize(n2);
  ws.R1.resize(nspec);
  ws.R2.resize(nspec);
  ws.row_acc.resize(2 * n);
  auto& R1 = ws.R1;
  auto& R2 = ws.R2;

  // Explicit forcing: (1/2)W' in real space (one fused pass also collects
  // the well energy density), interaction term in k-space.
  {
    const double* a = s.u.u1.data();
    const double* b = s.u.u2.data();
    double* w1 = ws.w1.data();
    double* w2 = ws.w2.data();
    double* wv = ws.wval.data();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n2); ++i) {
      const auto g = triple_well_grad(a[i], b[i], p.well);
      w1[i] = 0.5 * g.first;
      w2[i] = 0.5 * g.second;
      wv[i] = triple_well(a[i], b[i], p.well);
    }
  }
  detail::fft_forward(n, ws.w1.data(), R1.data());
  detail::fft_forward(n, ws.w2.data(), R2.data());

  // Energy of the state being stepped. Row-blocked reductions: per-row
  // partials in parallel, combined serially, so the result is independent of
  // the thread count.
  const double inv_cols = 1.0 / cols;
  (void)inv_cols;
  // raw pointers hoisted out of the parallel region (ws is thread-local to
  // the calling thread; workers must not touch their own instances)
  double* row_acc = ws.row_acc.data();
  const std::complex<double>* pU1 = U1.data();
  const std::complex<double>* pU2 = U2.data();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (int a = 0; a < n; ++a) {
    const int k1 = detail::signed_freq(a, n);
    double acc_grad = 0.0, acc_nl = 0.0;
    for (int c = 0; c < cols; ++c) {
      const std::size_t idx = static_cast<std::size_t>(a) * cols + c;
      const int k2 = (c == n / 2) ? -n / 2 : c;
      const double w = (c == 0 || c == n / 2) ? 1.0 : 2.0;
      const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const double n1 = std::norm(pU1[idx]), nn2 = std::norm(pU2[idx]);
      acc_grad += w * kFourPiSq * kk * (n1 + nn2 + std::norm(pU1[idx] + pU2[idx]));
      if (kk != 0.0) {
        const double cross = (pU1[idx] * std::conj(pU2[idx])).real();
        acc_nl += w * (p.gamma.g11 * n1 + 2.0 * p.gamma.g12 * cross + p.gamma.g22 * nn2) / (kFourPiSq * kk);
      }
    }
    row_acc[a] = acc_grad;
    row_acc[n + a] = acc_nl;
  }
  const double e_grad = kernels::block_sum(ws.row_acc.data(), n) * p.epsilon * p.epsilon / 4.0;
  const double e_nonloc = kernels::block_sum(ws.row_acc.data() + n, n) * p.epsilon / 2.0;
  const double e_well = 0.5 * kernels::sum(ws.wval.data(), n2) / static_cast<double>(n2);

  // Semi-implicit update, diagonal in the u1 ± u2 channels.
  const double half_eps_sq = 0.5 * p.epsilon * p.epsilon;
  {
    std::complex<double>* mU1 = U1.data();
    std::complex<double>* mU2 = U2.data();
    const std::complex<double>* pR1 = R1.data();
    const std::complex<double>* pR2 = R2.data();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long long idx = 0; idx < static_cast<long long>(nspec); ++idx) {
      const int a = static_cast<int>(idx) / cols;
      const int c = static_cast<int>(idx) % cols;
      const int k1 = detail::signed_freq(a, n);
      const int k2 = (c == n / 2) ? -n / 2 : c;
      const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      if (kk == 0.0) continue;  // means handled exactly below
      // interaction contribution to the explicit forcing
      const double green = 1.0 / (kFourPiSq * kk);
      const std::complex<double> nl1 = p.epsilon * green * (p.gamma.g11 * mU1[idx] + p.gamma.g12 * mU2[idx]);
      const std::complex<double> nl2 = p.epsilon * green * (p.gamma.g12 * mU1[idx] + p.gamma.g22 * mU2[idx]);
      const std::complex<double> rp = (pR1[idx] + nl1) + (pR2[idx] + nl2);
      const std::complex<double> rm = (pR1[idx] + nl1) - (pR2[idx] + nl2);
      const std::complex<double> wp = mU1[idx] + mU2[idx];
      const std::complex<double> wm = mU1[idx] - mU2[idx];
      const double denom_p = 1.0 + dt * S + 3.0 * dt * half_eps_sq * kFourPiSq * kk;
      const double denom_m = 1.0 + dt * S + dt * half_eps_sq * kFourPiSq * kk;
      const std::complex<double> np = ((1.0 + dt * S) * wp - dt * rp) / denom_p;
      const std::complex<double> nm = ((1.0 + dt * S) * wm - dt * rm) / denom_m;
      mU1[idx] = 0.5 * (np + nm);
      mU2[idx] = 0.5 * (np - nm);
    }
  }

  // Multipliers: the projection part is the mean of the explicit forcing;
  // the k=0 coefficients are pinned to the target masses (exact constraint).
  s.lambda1 = R1[0].real() + cfg.rho * (s.mass1 - p.M1);
  s.lambda2 = R2[0].real() + cfg.rho * (s.mass2 - p.M2);
  U1[0] = s.mass1;
  U2[0] = s.mass2;

  detail::fft_backward(n, U1.data(), s.u.u1.data());
  detail::fft_backward(n, U2.data(), s.u.u2.data());
  if (!kernels::all_finite(s.u.u1.data(), n2) || !kernels::all_finite(s.u.u2.data(), n2))
    throw std::runtime_error("flow::step: NaN detected at step " + std::to_string(s.step_count + 1) +
                             " (t=" + std::to_string(s.t) + "); reduce dt or raise the stabilizer");

  // Record the energy of the state we advanced from (spectra were at hand);
  // the final state's entry is appended by finalize_history.
  const EnergyRecord rec{s.step_count, s.t,    e_grad + e_well + e_nonloc, e_grad,
                         e_well,       e_nonloc, s.mass1 - p.M1,           s.mass2 - p.M2};
  if (!s.history.empty() && s.history.back().step == s.step_count)
    s.history.back() = rec;
  else
    s.history.push_back(rec);
  ++s.step_count;
  s.t += dt;
}

namespace {

// Appends the current state's energy (history normally lags one step).
void finalize_history(FlowState& s, const ModelParams& p) {
  if (!s.history.empty() && s.history.back().step == s.step_count) return;
  const auto e = diffuse_energy(s.u, p);
  s.history.push_back({s.step_count, s.t, e.total, e.gradient, e.well, e.nonlocal, s.mass1 - p.M1, s.mass2 - p.M2});
}

}  // namespace

RunReport run(FlowState& s, const FlowConfig& cfg, const ModelParams& p, const std::string& out_dir) {
  cfg.validate();
  p.validate();
  RunReport report;
  const auto t0 = std::chrono::steady_clock::now();

  auto snapshot = [&](long stepno) {
    if (out_dir.empty()) return;
    const std::string base = out_dir + "/state_" + std::to_string(stepno);
    io::write_snapshot(base + ".tdf", {s.u.u1, s.u.u2});
    io::write_composite_ppm(base + ".ppm", s.u.u1, s.u.u2);
    report.snapshot_paths.push_back(base + ".tdf");
  };

  if (cfg.max_steps == 0) {
    finalize_history(s, p);
    report.stop_reason = "budget";
    report.final_energy = s.history.back().total;
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
  }

  long steps_done = 0;
  std::string reason = "budget";
  while (steps_done < cfg.max_steps) {
    step(s, cfg, p);
    ++steps_done;
    const auto& h = s.history;
    const std::size_t m = h.size();
    if (cfg.strict && m >= 2 && h[m - 1].total > h[m - 2].total + 1e-12)
      throw std::runtime_error("flow::run: energy increased at step " + std::to_string(h[m - 1].step) + " (" +
                               std::to_string(h[m - 2].total) + " -> " + std::to_string(h[m - 1].total) +
                               ") in strict mode");
    if (cfg.snapshot_every > 0 && steps_done % cfg.snapshot_every == 0) snapshot(s.step_count);
    if (static_cast<long>(m) > cfg.window + 1) {
      const double e_old = h[m - 1 - cfg.window].total;
      const double e_new = h[m - 1].total;
      const double scale = std::max(std::abs(e_new), 1e-300);
      if ((e_old - e_new) / scale < cfg.energy_tol * cfg.window) {
        reason = "stationary";
        break;
      }
    }
  }
  finalize_history(s, p);
  if (cfg.strict) {
    const auto& h = s.history;
    if (h.size() >= 2 && h.back().total > h[h.size() - 2].total + 1e-12)
      throw std::runtime_error("flow::run: energy increased on the final step in strict mode");
  }
  snapshot(s.step_count);
  report.stop_reason = reason;
  report.steps = steps_done;
  report.final_energy = s.history.back().total;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

void write_energy_csv(const std::string& path, const std::vector<EnergyRecord>& history) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_energy_csv: cannot open " + path);
  os.precision(16);
  os << "step,time,total,gradient_term,well_term,nonlocal_term,mass1_drift,mass2_drift\n";
  for (const auto& r : history)
    os << r.step << "," << r.time << "," << r.total << "," << r.gradient << "," << r.well << "," << r.nonlocal << ","
       << r.drift1 << "," << r.drift2 << "\n";
}

}  // namespace tern
