#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tern/energy.hpp"
#include "tern/params.hpp"
#include "tern/well.hpp"

using namespace tern;
using std::numbers::pi;

TEST_CASE("beta weights: linear combinations and inverse map") {
  auto b = beta_weights({1, 1, 1});
  CHECK(b.b0 == 1.0);
  CHECK(b.b1 == 1.0);
  CHECK(b.b2 == 1.0);

  b = beta_weights({1, 2, 1});
  CHECK(b.b0 == 2.0);
  CHECK(b.b1 == 0.0);
  CHECK(b.b2 == 2.0);

  b = beta_weights({1, 3, 1});
  CHECK(b.b0 == 3.0);
  CHECK(b.b1 == -1.0);
  CHECK(b.b2 == 3.0);

  // dyadic tensions: the round trip is bit-exact
  const SurfaceTensions s{0.75, 1.5, 1.25};
  const auto back = sigma_from_beta(beta_weights(s));
  CHECK(back.s01 == s.s01);
  CHECK(back.s02 == s.s02);
  CHECK(back.s12 == s.s12);
  // general tensions: exact up to one rounding per addition
  const SurfaceTensions t{0.7, 1.9, 1.3};
  const auto back2 = sigma_from_beta(beta_weights(t));
  CHECK(back2.s01 == doctest::Approx(t.s01).epsilon(4e-16));
  CHECK(back2.s02 == doctest::Approx(t.s02).epsilon(4e-16));
  CHECK(back2.s12 == doctest::Approx(t.s12).epsilon(4e-16));
}

TEST_CASE("regime classification across the figure triples") {
  CHECK(classify_regime({1, 1, 1}) == Regime::DoubleBubble);
  CHECK(classify_regime({1, 1.6, 1}) == Regime::DoubleBubble);
  CHECK(classify_regime({1, 1.9, 1}) == Regime::DoubleBubble);
  CHECK(classify_regime({1, 2, 1}) == Regime::CoreShellDegenerate);
  CHECK(classify_regime({1, 3, 1}) == Regime::CoreShellStrict);
  CHECK(classify_regime({1, 1, 2}) == Regime::SingleBubblesDegenerate);
  CHECK(classify_regime({1, 1, 3}) == Regime::SingleBubblesStrict);
  // relative tolerance on the equality test
  CHECK(classify_regime({1, 2 + 1e-14, 1}) == Regime::CoreShellDegenerate);
  CHECK(classify_regime({1, 2 + 1e-9, 1}) == Regime::CoreShellStrict);
  // the mirrored degeneracy requires relabeling
  CHECK_THROWS_AS(classify_regime({3, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(classify_regime({0.0, 1, 1}), std::invalid_argument);
}

TEST_CASE("interaction rescaling round trip") {
  const InteractionMatrix Gamma{12.5, 3.25, 44.0};
  for (double eta : {0.5, 0.0625, 1.0 / 128.0}) {
    const auto gamma = gamma_from_Gamma(Gamma, eta);
    const auto back = Gamma_from_gamma(gamma, eta);
    // algebraic inverse: one rounding down, one back up
    CHECK(back.g11 == doctest::Approx(Gamma.g11).epsilon(4e-16));
    CHECK(back.g12 == doctest::Approx(Gamma.g12).epsilon(4e-16));
    CHECK(back.g22 == doctest::Approx(Gamma.g22).epsilon(4e-16));
  }
  CHECK_THROWS(gamma_from_Gamma(Gamma, 1.5));
}

TEST_CASE("triple well: minima, critical points, finite-difference gradient") {
  const WellParams w{7.0, 13.0, 5.0, 20.0};
  for (auto pt : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}}) {
    CHECK(triple_well(pt.first, pt.second, w) == 0.0);
    auto g = triple_well_grad(pt.first, pt.second, w);
    CHECK(g.first == 0.0);
    CHECK(g.second == 0.0);
  }
  // nonnegative on a wide box
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-0.8, 1.8);
  for (int i = 0; i < 500; ++i) {
    const double a = dist(rng), b = dist(rng);
    CHECK(triple_well(a, b, w) >= 0.0);
    const double h = 1e-5;
    auto g = triple_well_grad(a, b, w);
    const double fd1 = (triple_well(a + h, b, w) - triple_well(a - h, b, w)) / (2 * h);
    const double fd2 = (triple_well(a, b + h, w) - triple_well(a, b - h, w)) / (2 * h);
    const double scale = std::max({1.0, std::abs(g.first), std::abs(g.second)});
    CHECK(std::abs(g.first - fd1) / scale < 1e-6);
    CHECK(std::abs(g.second - fd2) / scale < 1e-6);
  }
}

namespace {

ModelParams base_params() {
  ModelParams p;
  p.sigma = {1, 1, 1};
  p.gamma = {0, 0, 0};
  p.epsilon = 0.1;
  p.M1 = 0.12;
  p.M2 = 0.04;
  return p;
}

PhaseDensity random_density(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 0.45);
  PhaseDensity u{GridField(n), GridField(n)};
  for (std::size_t i = 0; i < u.u1.size(); ++i) {
    u.u1.data()[i] = dist(rng);
    u.u2.data()[i] = dist(rng);
  }
  return u;
}

}  // namespace

TEST_CASE("diffuse energy of a spatially constant state") {
  auto p = base_params();
  p.gamma = {100.0, 50.0, 200.0};
  const int n = 32;
  PhaseDensity u{GridField(n), GridField(n)};
  for (std::size_t i = 0; i < u.u1.size(); ++i) {
    u.u1.data()[i] = 0.3;
    u.u2.data()[i] = 0.2;
  }
  const auto e = diffuse_energy(u, p);
  CHECK(e.gradient == 0.0);
  CHECK(std::abs(e.nonlocal) < 1e-18);  // G annihilates constants
  CHECK(e.well == doctest::Approx(0.5 * triple_well(0.3, 0.2, p.well)).epsilon(1e-14));
  CHECK(e.total == doctest::Approx(e.well).epsilon(1e-14));
}

TEST_CASE("single-mode exact gradient energy: eps^2 pi^2 / 4") {
  // u1 = (1+cos 2 pi x1)/2, u2 = 0, well off, gamma = 0. The three-component
  // gradient doubles the u1 Dirichlet integral, giving exactly eps^2 pi^2/4.
  auto p = base_params();
  p.well = {0.0, 0.0, 0.0, 0.0};
  const int n = 64;
  PhaseDensity u{GridField(n), GridField(n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) u.u1.at(a, b) = 0.5 * (1.0 + std::cos(2.0 * pi * u.u1.x1(a)));
  const auto e = diffuse_energy(u, p);
  CHECK(e.total == doctest::Approx(p.epsilon * p.epsilon * pi * pi / 4.0).epsilon(1e-12));
  CHECK(e.well == 0.0);
  CHECK(e.nonlocal == 0.0);
}

TEST_CASE("diffuse energy is invariant under grid translations") {
  auto p = base_params();
  p.gamma = {300.0, 80.0, 500.0};
  auto u = random_density(32, 17);
  const auto e0 = diffuse_energy(u, p);
  PhaseDensity shifted{u.u1.shifted(5, -9), u.u2.shifted(5, -9)};
  const auto e1 = diffuse_energy(shifted, p);
  CHECK(e1.total == doctest::Approx(e0.total).epsilon(1e-10));
  CHECK(e1.gradient == doctest::Approx(e0.gradient).epsilon(1e-10));
  CHECK(e1.nonlocal == doctest::Approx(e0.nonlocal).epsilon(1e-10));
}

TEST_CASE("nonlocal term is exactly symmetric under species swap") {
  auto p = base_params();
  p.gamma = {300.0, 80.0, 500.0};
  auto u = random_density(32, 23);
  const auto e = diffuse_energy(u, p);

  ModelParams q = p;
  std::swap(q.gamma.g11, q.gamma.g22);
  PhaseDensity v{u.u2, u.u1};
  const auto f = diffuse_energy(v, q);
  CHECK(e.nonlocal == f.nonlocal);
}

TEST_CASE("droplet-scale energy is E/eta, and requires eta") {
  auto p = base_params();
  p.gamma = {40.0, 10.0, 60.0};
  auto u = random_density(32, 31);
  CHECK_THROWS_AS(droplet_energy_diffuse(u, p), std::logic_error);
  p.eta = 0.0625;
  const double e = diffuse_energy(u, p).total;
  CHECK(droplet_energy_diffuse(u, p) == e / 0.0625);
}

TEST_CASE("phase density slack validation") {
  PhaseDensity u{GridField(16), GridField(16)};
  u.u1.data()[5] = 1.2;  // within default slack
  u.validate();
  u.u1.data()[5] = 1.3;
  CHECK_THROWS(u.validate());
}

TEST_CASE("config file round trip") {
  ConfigFile cfg;
  cfg.params.sigma = {1.0, 2.0, 1.0};
  cfg.params.gamma = {4000.0, 0.0, 20000.0};
  cfg.params.epsilon = 0.01;
  cfg.params.eta = 0.125;
  cfg.params.M1 = 0.12;
  cfg.params.M2 = 0.04;
  cfg.params.well = {9.0, 90.0, 9.0, 36.0};
  cfg.n = 128;
  cfg.seed = 77;
  cfg.dt = 5e-4;
  cfg.max_steps = 1234;
  write_config("test_config.toml", cfg);
  const auto back = read_config("test_config.toml");
  CHECK(back.params.sigma.s02 == 2.0);
  CHECK(back.params.gamma.g22 == 20000.0);
  CHECK(back.params.eta.value() == 0.125);
  CHECK(back.params.M1 == 0.12);
  CHECK(back.params.well.c02 == 90.0);
  CHECK(back.n == 128);
  CHECK(back.seed == 77);
  CHECK(back.dt == 5e-4);
  CHECK(back.max_steps == 1234);
  std::remove("test_config.toml");
}

TEST_CASE("config accepts [Gamma] with eta and rejects junk") {
  {
    std::ofstream os("test_config2.toml");
    os << "epsilon = 0.02\neta = 0.25\nn = 64\nmasses = [0.1, 0.05]\n"
       << "[sigma]\ns01 = 1\ns02 = 2\ns12 = 1\n"
       << "[Gamma]\ng11 = 10\ng22 = 20\n";
  }
  const auto cfg = read_config("test_config2.toml");
  const double f = 1.0 / (std::abs(std::log(0.25)) * 0.25 * 0.25 * 0.25);
  CHECK(cfg.params.gamma.g11 == doctest::Approx(10.0 * f).epsilon(1e-15));
  {
    std::ofstream os("test_config3.toml");
    os << "epsilon = 0.02\nbogus = 3\n";
  }
  CHECK_THROWS(read_config("test_config3.toml"));
  std::remove("test_config2.toml");
  std::remove("test_config3.toml");
}
