#pragma once
// Data-parallel kernels shared by the field and flow code.
//
// Every kernel comes in two flavours: a plain serial loop (suffix _serial,
// kept as the reference implementation) and an OpenMP variant. The two are
// bit-identical: pointwise maps trivially so, and reductions use a fixed
// block decomposition combined in a fixed serial order, so results do not
// depend on the thread count. tools/bench_kernels compares their throughput.

#include <cstddef>
#include <cmath>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace tern::kernels {

inline constexpr std::size_t kReductionBlock = 4096;

// y[i] = a*x[i] + b*y[i]
void axpby_serial(double a, const double* x, double b, double* y, std::size_t n);
void axpby(double a, const double* x, double b, double* y, std::size_t n);

// y[i] = x[i] * s
void scale_serial(const double* x, double s, double* y, std::size_t n);
void scale(const double* x, double s, double* y, std::size_t n);

// y[i] += c
void add_scalar_serial(double* y, double c, std::size_t n);
void add_scalar(double* y, double c, std::size_t n);

// Neumaier-compensated sum of one fixed-size block.
double block_sum(const double* x, std::size_t n);
double block_dot(const double* x, const double* y, std::size_t n);

// Blocked deterministic reductions: per-block compensated partial sums
// (parallelizable) combined serially in index order.
double sum_serial(const double* x, std::size_t n);
double sum(const double* x, std::size_t n);
double dot_serial(const double* x, const double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);

double max_abs_serial(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);

bool all_finite(const double* x, std::size_t n);

// Pointwise binary map over two fields producing two outputs,
// out_i = f(a[i], b[i]) with f returning a pair. Used for well gradients.
template <class F>
void map2_serial(const double* a, const double* b, double* o1, double* o2, std::size_t n, F&& f) {
  for (std::size_t i = 0; i < n; ++i) {
    auto [x, y] = f(a[i], b[i]);
    o1[i] = x;
    o2[i] = y;
  }
}

template <class F>
void map2(const double* a, const double* b, double* o1, double* o2, std::size_t n, F&& f) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    auto [x, y] = f(a[i], b[i]);
    o1[i] = x;
    o2[i] = y;
  }
#else
  map2_serial(a, b, o1, o2, n, std::forward<F>(f));
#endif
}

inline double sum(const std::vector<double>& v) { return sum(v.data(), v.size()); }
inline double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : sum(v.data(), v.size()) / static_cast<double>(v.size());
}

}  // namespace tern::kernels
