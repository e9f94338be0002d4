#include "tern/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "tern/kernels.hpp"

namespace tern {

GridField::GridField(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("GridField: n must be even and >= 8");
}

GridField::GridField(int n, std::vector<double> data) : n_(n), data_(std::move(data)) { validate(); }

void GridField::validate() const {
  if (n_ < 8 || n_ % 2 != 0) throw std::invalid_argument("GridField: n must be even and >= 8");
  if (data_.size() != static_cast<std::size_t>(n_) * n_) throw std::invalid_argument("GridField: data size mismatch");
  if (!kernels::all_finite(data_.data(), data_.size())) throw std::invalid_argument("GridField: non-finite sample");
}

double GridField::mean() const { return kernels::sum(data_.data(), data_.size()) / static_cast<double>(data_.size()); }

double GridField::l2_norm_sq() const {
  return kernels::dot(data_.data(), data_.data(), data_.size()) / static_cast<double>(data_.size());
}

double GridField::max_abs() const { return kernels::max_abs(data_.data(), data_.size()); }

GridField GridField::shifted(int da, int db) const {
  GridField out(n_);
  auto wrap = [this](int i) { return ((i % n_) + n_) % n_; };
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) out.at(a, b) = at(wrap(a - da), wrap(b - db));
  return out;
}

SpectralField::SpectralField(int n) : n_(n), raw_(static_cast<std::size_t>(n) * (n / 2 + 1)) {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("SpectralField: n must be even and >= 8");
}

std::complex<double> SpectralField::coeff(int k1, int k2) const {
  if (k1 < -n_ / 2 || k1 > n_ / 2 - 1 || k2 < -n_ / 2 || k2 > n_ / 2 - 1)
    throw std::out_of_range("SpectralField::coeff: frequency out of range");
  if (k2 >= 0) return raw_at(((k1 % n_) + n_) % n_, k2);
  return std::conj(raw_at(((-k1 % n_) + n_) % n_, -k2));
}

double SpectralField::coeff_norm_sq() const {
  const int cols = n_ / 2 + 1;
  double s = 0.0;
  for (int a = 0; a < n_; ++a)
    for (int c = 0; c < cols; ++c) {
      const double w = (c == 0 || c == n_ / 2) ? 1.0 : 2.0;  // Hermitian partner for 0 < k₂ < n/2
      s += w * std::norm(raw_at(a, c));
    }
  return s;
}

double SpectralField::interpolate(double x1, double x2) const {
  const int cols = n_ / 2 + 1;
  double acc = 0.0;
  for (int a = 0; a < n_; ++a) {
    const int k1 = detail::signed_freq(a, n_);
    for (int c = 0; c < cols; ++c) {
      // Column c = n/2 holds the single canonical frequency k₂ = -n/2;
      // interior columns stand for the Hermitian pair (k₂, -k₂).
      const int k2 = (c == n_ / 2) ? -n_ / 2 : c;
      const double w = (c == 0 || c == n_ / 2) ? 1.0 : 2.0;
      const double phase = 2.0 * std::numbers::pi * (k1 * x1 + k2 * x2);
      const std::complex<double> z = raw_at(a, c) * std::complex<double>(std::cos(phase), std::sin(phase));
      acc += w * z.real();
    }
  }
  return acc;
}

namespace detail {

namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

std::mutex g_planner_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

// FFTW's planner is not thread-safe; execution via the new-array interface is.
PlanPair get_plans(int n) {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> rbuf(static_cast<std::size_t>(n) * n);
  std::vector<std::complex<double>> cbuf(static_cast<std::size_t>(n) * (n / 2 + 1));
  PlanPair p;
  p.r2c = fftw_plan_dft_r2c_2d(n, n, rbuf.data(), reinterpret_cast<fftw_complex*>(cbuf.data()),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.c2r = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(cbuf.data()), rbuf.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.r2c || !p.c2r) throw std::runtime_error("FFTW plan creation failed");
  cache[n] = p;
  return p;
}

}  // namespace

void fft_forward(int n, const double* in, std::complex<double>* out) {
  PlanPair p = get_plans(n);
  // out-of-place r2c preserves its input (FFTW_DESTROY_INPUT is not set)
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  const int cols = n / 2 + 1;
  const double norm = 1.0 / (static_cast<double>(n) * n);
  for (int a = 0; a < n; ++a) {
    const int k1 = signed_freq(a, n);
    for (int c = 0; c < cols; ++c) {
      // Centring phase e^{2πi k·(1/2,1/2)} = (-1)^{k₁+k₂}.
      const double sgn = ((k1 + c) & 1) ? -1.0 : 1.0;
      out[static_cast<std::size_t>(a) * cols + c] *= sgn * norm;
    }
  }
}

void fft_backward(int n, const std::complex<double>* in, double* out) {
  // multidimensional out-of-place c2r destroys its input, so stage through a
  // scratch spectrum (which also takes the centring phase)
  thread_local std::vector<std::complex<double>> tmp;
  const int cols = n / 2 + 1;
  tmp.assign(in, in + static_cast<std::size_t>(n) * cols);
  PlanPair p = get_plans(n);
  for (int a = 0; a < n; ++a) {
    const int k1 = signed_freq(a, n);
    for (int c = 0; c < cols; ++c) {
      const double sgn = ((k1 + c) & 1) ? -1.0 : 1.0;
      tmp[static_cast<std::size_t>(a) * cols + c] *= sgn;
    }
  }
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(tmp.data()), out);
}

}  // namespace detail

SpectralField transform(const GridField& f) {
  SpectralField F(f.n());
  detail::fft_forward(f.n(), f.data(), F.raw());
  return F;
}

GridField inverse_transform(const SpectralField& F) {
  GridField f(F.n());
  detail::fft_backward(F.n(), F.raw(), f.data());
  return f;
}

GridField green_convolve(const GridField& f) {
  constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  return spectral_apply(f, [](int k1, int k2) {
    const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    return kk == 0.0 ? 0.0 : 1.0 / (four_pi_sq * kk);
  });
}

GridField helmholtz_solve(const GridField& f, double a) {
  if (a < 0.0) throw std::invalid_argument("helmholtz_solve: a must be nonnegative");
  constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  return spectral_apply(f, [a](int k1, int k2) {
    const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    return 1.0 / (1.0 + a * four_pi_sq * kk);
  });
}

GridField laplacian(const GridField& f) {
  constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  return spectral_apply(f, [](int k1, int k2) {
    const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    return -four_pi_sq * kk;
  });
}

}  // namespace tern
