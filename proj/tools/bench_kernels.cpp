// Throughput comparison of the serial reference kernels against the OpenMP
// variants, plus one full flow step at production resolution.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "tern/flow.hpp"
#include "tern/well.hpp"
#include "tern/kernels.hpp"

using namespace tern;
using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

template <class F>
double time_loop(int reps, F&& f) {
  f();  // warmup
  const auto t0 = clk::now();
  for (int r = 0; r < reps; ++r) f();
  return seconds_since(t0) / reps;
}

}  // namespace

int main() {
#if defined(_OPENMP)
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled at build time\n");
#endif

  const std::size_t n = 1 << 22;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(n), y(n), z(n), z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = dist(rng);
    y[i] = dist(rng);
  }

  struct Row {
    const char* name;
    double serial, parallel;
  };
  std::vector<Row> rows;

  rows.push_back({"axpby", time_loop(20, [&] { kernels::axpby_serial(1.1, x.data(), 0.9, y.data(), n); }),
                  time_loop(20, [&] { kernels::axpby(1.1, x.data(), 0.9, y.data(), n); })});
  rows.push_back({"sum", time_loop(20, [&] { volatile double s = kernels::sum_serial(x.data(), n); (void)s; }),
                  time_loop(20, [&] { volatile double s = kernels::sum(x.data(), n); (void)s; })});
  rows.push_back({"dot", time_loop(20, [&] { volatile double s = kernels::dot_serial(x.data(), y.data(), n); (void)s; }),
                  time_loop(20, [&] { volatile double s = kernels::dot(x.data(), y.data(), n); (void)s; })});
  auto well_map = [&](bool parallel) {
    const WellParams w;
    auto f = [&w](double a, double b) { return triple_well_grad(a, b, w); };
    if (parallel)
      kernels::map2(x.data(), y.data(), z.data(), z2.data(), n, f);
    else
      kernels::map2_serial(x.data(), y.data(), z.data(), z2.data(), n, f);
  };
  rows.push_back({"well_grad map", time_loop(5, [&] { well_map(false); }), time_loop(5, [&] { well_map(true); })});

  std::printf("%-16s %12s %12s %8s\n", "kernel", "serial[ms]", "omp[ms]", "speedup");
  for (const auto& r : rows)
    std::printf("%-16s %12.3f %12.3f %8.2fx\n", r.name, r.serial * 1e3, r.parallel * 1e3, r.serial / r.parallel);

  // one full production-resolution flow step (FFTs + kernels)
  ModelParams p;
  p.sigma = {1, 2, 1};
  p.gamma = {4000, 0, 20000};
  p.well = {12.318244, 12.318244 * 256.0, 12.318244, 4 * 12.318244};
  p.epsilon = 0.035;
  p.M1 = 0.12;
  p.M2 = 0.04;
  FlowConfig cfg;
  cfg.dt = 1e-3;
  auto state = init_random(p, 256, cfg);
  const double per_step = time_loop(20, [&] { step(state, cfg, p); });
  std::printf("%-16s %12.3f ms/step at n=256\n", "flow step", per_step * 1e3);
  return 0;
}
