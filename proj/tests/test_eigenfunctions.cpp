#include "doctest.h"
#include "lscont/eigenfunctions.hpp"

#include <cmath>
#include <random>

using namespace lscont;

namespace {

const double kNorm = std::sqrt(2.0 / kPi);

cplx newton_zero(const PhysicalConfig& cfg, cplx q, Sign s) {
  for (int i = 0; i < 30; ++i) {
    const ShellSolution sol(cfg, q);
    q -= sol.jost(s) / sol.jost_derivative(s);
  }
  return q;
}

// Richardson-extrapolated limit of (q - q0) chi+-(r;q) along a ray into q0.
cplx residue_limit(const PhysicalConfig& cfg, double r, cplx q0, Sign s, double theta) {
  const cplx dir = std::polar(1.0, theta);
  auto f = [&](double h) { return h * dir * chi_pm(cfg, r, q0 + h * dir, s); };
  const double h = 2e-4;
  const cplx a0 = f(h), a1 = f(h / 2), a2 = f(h / 4);
  const cplx b0 = 2.0 * a1 - a0, b1 = 2.0 * a2 - a1;
  return (4.0 * b1 - b0) / 3.0;
}

}  // namespace

TEST_CASE("free eigenfunctions") {
  const PhysicalConfig cfg = PhysicalConfig::free_particle();
  for (cplx q : {cplx{1.0, 0.0}, cplx{2.5, -1.0}, cplx{-3.0, 2.0}}) {
    for (double r : {0.2, 1.5, 6.0}) {
      const cplx ref = kNorm * std::sin(q * r);
      CHECK(std::abs(chi_pm(cfg, r, q, Sign::plus) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
      CHECK(std::abs(chi_pm(cfg, r, q, Sign::minus) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
      CHECK(chi_zero(r, q) == ref);
    }
  }
  CHECK(std::abs(chi_zero(1.0, kI) - kNorm * kI * std::sinh(1.0)) < 1e-15);
  CHECK(chi_zero(0.7, 1.3).imag() == 0.0);
}

TEST_CASE("conjugation and parity of chi+-") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  for (double k : {0.3, 1.0, 2.3, 5.0, 12.0})
    for (double r : {0.5, 1.5, 3.0})
      CHECK(std::abs(chi_pm(cfg, r, k, Sign::plus) - std::conj(chi_pm(cfg, r, k, Sign::minus))) < 1e-12);
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int i = 0; i < 50; ++i) {
    const cplx q{u(gen), u(gen)};
    for (double r : {0.5, 1.5, 3.0}) {
      const cplx a = chi_pm(cfg, r, -q, Sign::plus), b = chi_pm(cfg, r, q, Sign::minus);
      CHECK(std::abs(a + b) <= 1e-11 * std::max(std::abs(b), 1e-3));
    }
  }
}

TEST_CASE("q = 0 and poles are refused") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  CHECK_THROWS_AS(chi_pm(cfg, 1.0, 0.0, Sign::plus), Error);
  const cplx q0 = newton_zero(cfg, {2.32, -0.01}, Sign::plus);
  try {
    chi_pm(cfg, 1.5, q0, Sign::plus);
    FAIL("expected at_pole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::at_pole);
  }
  // the other sign is regular there
  CHECK(std::isfinite(std::abs(chi_pm(cfg, 1.5, q0, Sign::minus))));
  CHECK_NOTHROW(chi_pm(cfg, 1.5, q0 + 1e-6, Sign::plus));
}

TEST_CASE("residues at the two lowest resonances") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  for (cplx guess : {cplx{2.3191, -0.0093}, cplx{3.9925, -0.2591}}) {
    const cplx q0 = newton_zero(cfg, guess, Sign::plus);
    for (double r : {0.5, 1.5, 3.0}) {
      const cplx res = residue_chi_pm(cfg, r, q0, Sign::plus);
      for (double theta : {0.3, 2.0})
        CHECK(rel_diff(res, residue_limit(cfg, r, q0, Sign::plus, theta)) < 1e-8);
    }
    // Z- = -Z+
    const cplx res_m = residue_chi_pm(cfg, 1.5, -q0, Sign::minus);
    CHECK(std::isfinite(std::abs(res_m)));
    // 1/(q - q0) divergence: log-log slope -1
    const double h1 = 1e-4, h2 = 1e-6;
    const double slope = std::log(std::abs(chi_pm(cfg, 1.5, q0 + h2, Sign::plus)) /
                                  std::abs(chi_pm(cfg, 1.5, q0 + h1, Sign::plus))) /
                         std::log(h2 / h1);
    CHECK(std::abs(slope + 1.0) < 0.05);
  }
}

TEST_CASE("residue refusals") {
  const PhysicalConfig free = PhysicalConfig::free_particle();
  for (cplx q : {cplx{2.0, -0.5}, cplx{1.0, 1.0}}) {
    try {
      residue_chi_pm(free, 1.0, q, Sign::plus);
      FAIL("expected not_a_pole");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::not_a_pole);
    }
  }
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  CHECK_THROWS_AS(residue_chi_pm(cfg, 1.0, {2.0, -0.5}, Sign::plus), Error);
}

TEST_CASE("growth bound: free case against brute-force sup of the sine ratio") {
  const PhysicalConfig free = PhysicalConfig::free_particle();
  GrowthRegion g;
  g.re_min = -5; g.re_max = 5; g.im_min = -5; g.im_max = 5;
  g.n_re = g.n_im = 21;
  for (int i = 1; i <= 20; ++i) g.radii.push_back(0.5 * i);
  const GrowthReport rep = growth_bound_check(free, g);
  // sup over the z = q r plane of |sin z| (1+|z|)/|z| e^{-|Im z|}
  double brute = 0.0;
  for (int i = 0; i <= 2000; ++i)
    for (int j = 0; j <= 400; ++j) {
      const cplx z{0.01 * i, -2.0 + 0.01 * j};
      if (z == cplx{}) continue;
      brute = std::max(brute, std::abs(std::sin(z)) * (1 + std::abs(z)) / std::abs(z) * std::exp(-std::abs(z.imag())));
    }
  CHECK(rep.finite);
  CHECK(rep.sup_chi <= brute * (1 + 1e-9));
  CHECK(rep.sup_chi > 1.0);  // the ratio is bounded by a constant, not by 1
  CHECK(rep.sup_chi > 0.97 * brute);
}

TEST_CASE("growth bound: canonical config") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  GrowthRegion right, left;
  right.re_min = 0.05; right.re_max = 10; right.im_min = -10; right.im_max = 10;
  right.n_re = 25; right.n_im = 25;
  for (int i = 1; i <= 20; ++i) right.radii.push_back(0.5 * i);
  left = right;
  left.re_min = -10; left.re_max = -0.05;
  left.im_min = -10; left.im_max = 10;
  const GrowthReport a = growth_bound_check(cfg, right), b = growth_bound_check(cfg, left);
  CHECK(a.finite);
  CHECK(a.sup_chi < 1e3);
  CHECK(std::isfinite(a.sup_plus));
  CHECK(std::abs(a.sup_chi - b.sup_chi) <= 1e-10 * a.sup_chi);
}
