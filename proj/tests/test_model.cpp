#include "doctest.h"
#include "lscont/model.hpp"

#include <cmath>
#include <random>

using namespace lscont;

TEST_CASE("wave number and energy map back and forth on both sheets") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z{u(gen), u(gen)};
    for (Sheet sh : {Sheet::I, Sheet::II}) {
      const cplx q = wavenumber_from_energy(cfg, {z, sh});
      if (sh == Sheet::I) CHECK(q.imag() >= 0.0);
      else CHECK(q.imag() <= 0.0);
      const SheetPoint back = energy_from_wavenumber(cfg, q);
      CHECK(back.sheet == sh);
      CHECK(std::abs(back.z - z) <= 1e-12 * std::abs(z));
    }
  }
}

TEST_CASE("sheet boundary conventions") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  CHECK(wavenumber_from_energy(cfg, {4.0, Sheet::I}) == cplx{2.0, 0.0});
  CHECK(wavenumber_from_energy(cfg, {4.0, Sheet::II}) == cplx{-2.0, 0.0});
  CHECK(std::abs(wavenumber_from_energy(cfg, {-4.0, Sheet::I}) - cplx{0.0, 2.0}) < 1e-15);
  CHECK(std::abs(wavenumber_from_energy(cfg, {-4.0, Sheet::II}) - cplx{0.0, -2.0}) < 1e-15);
  CHECK(wavenumber_from_energy(cfg, {0.0, Sheet::II}) == cplx{});
  CHECK(energy_from_wavenumber(cfg, 0.0).sheet == Sheet::I);
  CHECK(energy_from_wavenumber(cfg, {3.0, 0.0}).sheet == Sheet::I);
  CHECK(energy_from_wavenumber(cfg, {-3.0, 0.0}).sheet == Sheet::II);
}

TEST_CASE("units enter through hbar^2/2m") {
  PhysicalConfig cfg;
  cfg.hbar = 2.0;
  cfg.mass = 3.0;
  const double h2m = 4.0 / 6.0;
  CHECK(cfg.h2m() == doctest::Approx(h2m));
  const cplx q{1.3, -0.4};
  CHECK(std::abs(energy_from_wavenumber(cfg, q).z - h2m * q * q) < 1e-14);
  CHECK(std::abs(kappa(cfg, q) * kappa(cfg, q) - (q * q - cfg.v0 / h2m)) < 1e-12);
}

TEST_CASE("energy representation rescale") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const cplx q{2.0, -0.5};
  const cplx f{0.3, 0.7};
  const cplx there = energy_rep_rescale(cfg, q, f, RescaleDirection::wave_to_energy);
  CHECK(std::abs(there - f * std::sqrt(1.0 / (2.0 * q))) < 1e-15);
  const cplx back = energy_rep_rescale(cfg, q, there, RescaleDirection::energy_to_wave);
  CHECK(std::abs(back - f) < 1e-15);
  // f(k) = sqrt(2k) f(E) with hbar^2/2m = 1
  CHECK(std::abs(energy_rep_rescale(cfg, 2.0, 1.0, RescaleDirection::energy_to_wave) - 2.0) < 1e-15);
  try {
    energy_rep_rescale(cfg, 0.0, 1.0, RescaleDirection::wave_to_energy);
    FAIL("expected singular rescale");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_rescale);
  }
}

TEST_CASE("config parsing and validation") {
  const PhysicalConfig c = parse_config("# shell\nhbar = 1\nmass=0.5\n a = 0.5 \nb=3 # outer\nv0=-2\n");
  CHECK(c.a == 0.5);
  CHECK(c.b == 3.0);
  CHECK(c.v0 == -2.0);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(parse_config("foo=1"), Error);
  CHECK_THROWS_AS(parse_config("a=x"), Error);
  CHECK_THROWS_AS(parse_config("a"), Error);
  PhysicalConfig bad;
  bad.b = 0.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.mass = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("kappa branch examples") {
  PhysicalConfig cfg = PhysicalConfig::canonical();
  CHECK(std::abs(kappa(cfg, 0.0) - cplx{0.0, std::sqrt(10.0)}) < 1e-15);
  CHECK(std::abs(kappa(cfg, std::sqrt(10.0))) < 1e-7);
  cfg.v0 = 0.0;
  for (cplx q : {cplx{-2.0, 1.0}, cplx{3.0, -4.0}}) CHECK(kappa(cfg, q) == q);
}

TEST_CASE("rescale examples") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  CHECK(std::abs(energy_rep_rescale(cfg, 0.5, 1.0, RescaleDirection::wave_to_energy) - 1.0) < 1e-15);
  CHECK(std::abs(energy_rep_rescale(cfg, 2.0, 1.0, RescaleDirection::wave_to_energy) - 0.5) < 1e-15);
  CHECK(std::abs(wavenumber_from_energy(cfg, {-1.0, Sheet::I}) - kI) < 1e-15);
  CHECK(std::abs(wavenumber_from_energy(cfg, {-1.0, Sheet::II}) + kI) < 1e-15);
  const SheetPoint p = energy_from_wavenumber(cfg, {3.0, -0.5});
  CHECK(p.sheet == Sheet::II);
  CHECK(std::abs(p.z - cplx{3.0, -0.5} * cplx{3.0, -0.5}) < 1e-14);
  CHECK(energy_from_wavenumber(cfg, kI).sheet == Sheet::I);
}
