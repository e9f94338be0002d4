#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tern/field_io.hpp"
#include "tern/grid.hpp"

using namespace tern;
using std::numbers::pi;

namespace {

GridField random_field(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GridField f(n);
  for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] = dist(rng);
  return f;
}

GridField cos_mode(int n, int k1, int k2, double amp = 1.0) {
  GridField f(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f.at(a, b) = amp * std::cos(2.0 * pi * (k1 * f.x1(a) + k2 * f.x2(b)));
  return f;
}

double inner(const GridField& f, const GridField& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.data()[i] * g.data()[i];
  return s / static_cast<double>(f.size());
}

}  // namespace

TEST_CASE("constant field transforms to a single k=0 coefficient") {
  GridField f(16);
  for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] = 2.5;
  auto F = transform(f);
  CHECK(F.coeff(0, 0).real() == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(F.coeff(0, 0).imag() == doctest::Approx(0.0).epsilon(1e-14));
  double off = 0.0;
  for (int k1 = -8; k1 < 8; ++k1)
    for (int k2 = -8; k2 < 8; ++k2)
      if (k1 != 0 || k2 != 0) off = std::max(off, std::abs(F.coeff(k1, k2)));
  CHECK(off < 1e-14);
}

TEST_CASE("cos(2 pi x1) has exactly the two (+-1,0) coefficients") {
  auto F = transform(cos_mode(32, 1, 0));
  CHECK(std::abs(F.coeff(1, 0) - std::complex<double>(0.5, 0.0)) < 1e-13);
  CHECK(std::abs(F.coeff(-1, 0) - std::complex<double>(0.5, 0.0)) < 1e-13);
  double off = 0.0;
  for (int k1 = -16; k1 < 16; ++k1)
    for (int k2 = -16; k2 < 16; ++k2)
      if (!(k2 == 0 && (k1 == 1 || k1 == -1))) off = std::max(off, std::abs(F.coeff(k1, k2)));
  CHECK(off < 1e-13);
}

TEST_CASE("round-trip transform is identity to 1e-12") {
  for (int n : {8, 64, 128}) {
    auto f = random_field(n, 42 + n);
    auto g = inverse_transform(transform(f));
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(f.data()[i] - g.data()[i]));
    CHECK(err < 1e-12 * f.max_abs());
  }
}

TEST_CASE("Parseval identity") {
  auto f = random_field(64, 7);
  auto F = transform(f);
  CHECK(F.coeff_norm_sq() == doctest::Approx(f.l2_norm_sq()).epsilon(1e-10));
}

TEST_CASE("green_convolve annihilates constants") {
  GridField f(16);
  for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] = 1.0;
  auto g = green_convolve(f);
  CHECK(g.max_abs() < 1e-14);
}

TEST_CASE("green_convolve eigenmode: cos(2 pi x1) -> cos(2 pi x1)/(4 pi^2)") {
  auto f = cos_mode(32, 1, 0);
  auto g = green_convolve(f);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    err = std::max(err, std::abs(g.data()[i] - f.data()[i] / (4.0 * pi * pi)));
  CHECK(err < 1e-13);
}

TEST_CASE("-Lap(G*f) recovers f - mean(f)") {
  auto f = random_field(64, 11);
  auto g = green_convolve(f);
  CHECK(std::abs(g.mean()) < 1e-14);
  auto lap = laplacian(g);
  const double m = f.mean();
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(-lap.data()[i] - (f.data()[i] - m)));
  CHECK(err < 1e-10);
}

TEST_CASE("green_convolve is self-adjoint") {
  auto f = random_field(32, 1);
  auto g = random_field(32, 2);
  const double a = inner(green_convolve(f), g);
  const double b = inner(f, green_convolve(g));
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("helmholtz_solve basics") {
  GridField c(16);
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] = -0.7;
  for (double a : {0.0, 0.5, 3.0}) {
    auto out = helmholtz_solve(c, a);
    double err = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) err = std::max(err, std::abs(out.data()[i] + 0.7));
    CHECK(err < 1e-13);
  }

  auto f = cos_mode(32, 1, 0);
  auto out = helmholtz_solve(f, 1.0);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    err = std::max(err, std::abs(out.data()[i] - f.data()[i] / (1.0 + 4.0 * pi * pi)));
  CHECK(err < 1e-13);

  // residual check on a random field
  auto r = random_field(64, 5);
  const double aa = 0.37;
  auto sol = helmholtz_solve(r, aa);
  auto lap = laplacian(sol);
  err = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    err = std::max(err, std::abs(sol.data()[i] - aa * lap.data()[i] - r.data()[i]));
  CHECK(err < 1e-10);

  // contraction on zero-mean fields
  auto z = random_field(32, 9);
  const double zm = z.mean();
  for (std::size_t i = 0; i < z.size(); ++i) z.data()[i] -= zm;
  CHECK(helmholtz_solve(z, 0.8).l2_norm_sq() <= z.l2_norm_sq() * (1.0 + 1e-14));
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS(GridField(7));
  CHECK_THROWS(GridField(9));
  std::vector<double> bad(64, 0.0);
  bad[10] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(GridField(8, std::move(bad)));
  CHECK_THROWS(helmholtz_solve(GridField(8), -1.0));
}

TEST_CASE("spectral interpolation agrees with samples") {
  auto f = random_field(16, 3);
  auto F = transform(f);
  for (int a : {0, 3, 9})
    for (int b : {1, 8, 15}) CHECK(F.interpolate(f.x1(a), f.x2(b)) == doctest::Approx(f.at(a, b)).epsilon(1e-11));
}

TEST_CASE("snapshot file round-trip") {
  auto u1 = random_field(16, 100);
  auto u2 = random_field(16, 101);
  const std::string path = "test_snapshot.tdf";
  io::write_snapshot(path, {u1, u2});
  auto channels = io::read_snapshot(path);
  REQUIRE(channels.size() == 2);
  CHECK(channels[0].n() == 16);
  for (std::size_t i = 0; i < u1.size(); ++i) {
    CHECK(channels[0].data()[i] == u1.data()[i]);
    CHECK(channels[1].data()[i] == u2.data()[i]);
  }
  io::write_pgm("test_snapshot.pgm", u1);
  io::write_composite_ppm("test_snapshot.ppm", u1, u2);
  std::remove(path.c_str());
  std::remove("test_snapshot.pgm");
  std::remove("test_snapshot.ppm");
}
