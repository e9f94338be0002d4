#include "tern/kernels.hpp"

#include <algorithm>

namespace tern::kernels {

void axpby_serial(double a, const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void axpby(double a, const double* x, double b, double* y, std::size_t n) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] = a * x[i] + b * y[i];
#else
  axpby_serial(a, x, b, y, n);
#endif
}

void scale_serial(const double* x, double s, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * s;
}

void scale(const double* x, double s, double* y, std::size_t n) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] = x[i] * s;
#else
  scale_serial(x, s, y, n);
#endif
}

void add_scalar_serial(double* y, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += c;
}

void add_scalar(double* y, double c, std::size_t n) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] += c;
#else
  add_scalar_serial(y, c, n);
#endif
}

double block_sum(const double* x, std::size_t n) {
  double s = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = s + x[i];
    if (std::abs(s) >= std::abs(x[i]))
      comp += (s - t) + x[i];
    else
      comp += (x[i] - t) + s;
    s = t;
  }
  return s + comp;
}

double block_dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p = x[i] * y[i];
    double t = s + p;
    if (std::abs(s) >= std::abs(p))
      comp += (s - t) + p;
    else
      comp += (p - t) + s;
    s = t;
  }
  return s + comp;
}

namespace {

// Combine fixed-block partials in index order; identical for any thread count.
template <class BlockFn>
double blocked_reduce(std::size_t n, bool parallel, BlockFn&& block_fn) {
  const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (nblocks <= 1) return block_fn(0, n);
  std::vector<double> partial(nblocks);
#if defined(_OPENMP)
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
      partial[b] = block_fn(lo, std::min(n, lo + kReductionBlock) - lo);
    }
  } else
#endif
  {
    (void)parallel;
    for (std::size_t b = 0; b < nblocks; ++b) {
      const std::size_t lo = b * kReductionBlock;
      partial[b] = block_fn(lo, std::min(n, lo + kReductionBlock) - lo);
    }
  }
  return block_sum(partial.data(), partial.size());
}

}  // namespace

double sum_serial(const double* x, std::size_t n) {
  return blocked_reduce(n, false, [&](std::size_t lo, std::size_t len) { return block_sum(x + lo, len); });
}

double sum(const double* x, std::size_t n) {
  return blocked_reduce(n, true, [&](std::size_t lo, std::size_t len) { return block_sum(x + lo, len); });
}

double dot_serial(const double* x, const double* y, std::size_t n) {
  return blocked_reduce(n, false, [&](std::size_t lo, std::size_t len) { return block_dot(x + lo, y + lo, len); });
}

double dot(const double* x, const double* y, std::size_t n) {
  return blocked_reduce(n, true, [&](std::size_t lo, std::size_t len) { return block_dot(x + lo, y + lo, len); });
}

double max_abs_serial(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) reduction(max : m)
  for (long long i = 0; i < static_cast<long long>(n); ++i) m = std::max(m, std::abs(x[i]));
#else
  m = max_abs_serial(x, n);
#endif
  return m;
}

bool all_finite(const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

}  // namespace tern::kernels
