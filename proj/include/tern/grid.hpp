#pragma once
// Periodic n×n real scalar fields on the unit torus T² = [-1/2, 1/2)² and
// their spectral counterparts.
//
// Conventions: sample (a,b) sits at x = (-1/2 + a/n, -1/2 + b/n), row-major
// with a indexing x₁. Plane waves are e^{2πik·x} with integer frequencies
// k ∈ {-n/2,…,n/2-1}², so -Δ acts as multiplication by 4π²|k|². Coefficients
// are stored relative to the centred coordinate (the grid offset phase
// (-1)^{k₁+k₂} is folded into the transform), hence coeff(0) is the mean.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tern {

class SpectralField;

class GridField {
 public:
  GridField() = default;
  // Zero field.
  explicit GridField(int n);
  // Takes ownership of row-major samples; validates size, parity and finiteness.
  GridField(int n, std::vector<double> data);

  int n() const { return n_; }
  std::size_t size() const { return data_.size(); }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double& at(int a, int b) { return data_[static_cast<std::size_t>(a) * n_ + b]; }
  double at(int a, int b) const { return data_[static_cast<std::size_t>(a) * n_ + b]; }

  // Coordinate of sample (a,b).
  double x1(int a) const { return -0.5 + static_cast<double>(a) / n_; }
  double x2(int b) const { return -0.5 + static_cast<double>(b) / n_; }

  double mean() const;
  double l2_norm_sq() const;  // (1/n²) Σ f², the discrete ∫f²
  double max_abs() const;

  // Cyclic shift by whole grid cells: result(a,b) = (*this)(a-da, b-db).
  GridField shifted(int da, int db) const;

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

// Half-complex spectrum of a real field: rows run over the full signed k₁
// range, columns store k₂ = 0 … n/2; the missing k₂ < 0 coefficients are
// recovered through Hermitian symmetry coeff(-k) = conj(coeff(k)).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int n);

  int n() const { return n_; }
  std::size_t raw_size() const { return raw_.size(); }
  std::complex<double>* raw() { return raw_.data(); }
  const std::complex<double>* raw() const { return raw_.data(); }

  // Storage accessor: a = (k₁ mod n) ∈ [0,n), c = k₂ ∈ [0, n/2].
  std::complex<double>& raw_at(int a, int c) { return raw_[static_cast<std::size_t>(a) * (n_ / 2 + 1) + c]; }
  std::complex<double> raw_at(int a, int c) const { return raw_[static_cast<std::size_t>(a) * (n_ / 2 + 1) + c]; }

  // Coefficient of e^{2πik·x} for any k ∈ {-n/2,…,n/2-1}².
  std::complex<double> coeff(int k1, int k2) const;

  // Σ_k |coeff(k)|², accounting for the implicit Hermitian half.
  double coeff_norm_sq() const;

  // Evaluate the trigonometric interpolant at an arbitrary torus point.
  double interpolate(double x1, double x2) const;

 private:
  int n_ = 0;
  std::vector<std::complex<double>> raw_;
};

// Forward/backward transforms. inverse_transform(transform(f)) == f to
// machine precision. Thread-safe on distinct fields (FFTW plans are cached
// per resolution behind a mutex and executed via the new-array interface).
SpectralField transform(const GridField& f);
GridField inverse_transform(const SpectralField& F);

// Applies a real multiplier m(k₁,k₂) in spectral space; one r2c/c2r pair.
template <class M>
GridField spectral_apply(const GridField& f, M&& multiplier);

// G * f with multiplier 1/(4π²|k|²) for k ≠ 0 and exactly 0 at k = 0,
// so the output always has mean zero.
GridField green_convolve(const GridField& f);

// (I - aΔ)⁻¹ f, exact per Fourier mode. Requires a ≥ 0.
GridField helmholtz_solve(const GridField& f, double a);

// -Δf, spectral.
GridField laplacian(const GridField& f);

namespace detail {
// Low-level transform working on raw buffers (size n² real / n·(n/2+1)
// complex). Includes the centring phase and 1/n² normalization on forward.
void fft_forward(int n, const double* in, std::complex<double>* out);
void fft_backward(int n, const std::complex<double>* in, double* out);
// Signed frequency for storage row a.
inline int signed_freq(int a, int n) { return a <= n / 2 - 1 ? a : a - n; }
}  // namespace detail

template <class M>
GridField spectral_apply(const GridField& f, M&& multiplier) {
  const int n = f.n();
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(n) * (n / 2 + 1));
  detail::fft_forward(n, f.data(), spec.data());
  const int cols = n / 2 + 1;
  for (int a = 0; a < n; ++a) {
    const int k1 = detail::signed_freq(a, n);
    for (int c = 0; c < cols; ++c) spec[static_cast<std::size_t>(a) * cols + c] *= multiplier(k1, c);
  }
  GridField out(n);
  detail::fft_backward(n, spec.data(), out.data());
  return out;
}

}  // namespace tern
