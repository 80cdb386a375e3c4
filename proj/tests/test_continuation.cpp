#include "doctest.h"
#include "lscont/continuation.hpp"
#include "lscont/eigenfunctions.hpp"
#include "lscont/poles.hpp"

#include <cmath>
#include <random>

using namespace lscont;

namespace {

template <class F>
auto simpson(F f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  auto s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * (h / 3.0);
}

const cplx kZ1{2.3190998502, -0.0093031055};  // lowest resonance, a zero of J+

cplx refined_zero(const PhysicalConfig& cfg, cplx guess, Sign side) {
  cplx q = guess;
  for (int i = 0; i < 30; ++i) {
    const ShellSolution s(cfg, q);
    q -= s.jost(side) / s.jost_derivative(side);
  }
  return q;
}

}  // namespace

TEST_CASE("real axis limit and duality") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const TestFunction phi = bump(2.0, 6.0, 1);
  for (double k : {0.4, 2.319, 5.0, 14.0}) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const cplx f = forward(cfg, phi, s == Sign::plus ? Channel::plus : Channel::minus, k);
      CHECK(std::abs(bra_eval(cfg, k, phi, s).value - f) <= 1e-9 * std::abs(f));
      CHECK(std::abs(ket_eval(cfg, k, phi, s).value - std::conj(f)) <= 1e-9 * std::abs(f));
    }
  }
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> re(-8.0, 8.0), im(-4.0, 4.0);
  for (int i = 0; i < 20; ++i) {
    const cplx q{re(gen), im(gen)};
    for (Sign s : {Sign::plus, Sign::minus}) {
      const cplx ket = ket_eval(cfg, q, phi, s).value;
      const cplx bra = bra_eval(cfg, std::conj(q), phi, s).value;
      CHECK(std::abs(ket - std::conj(bra)) <= 1e-9 * std::abs(ket));
    }
  }
}

TEST_CASE("free functionals") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const TestFunction phi = bump(0.5, 3.0);
  // at q = i the kernel is i sinh(r)
  const double sh = simpson([&](double r) { return phi.value(r) * std::sinh(r); }, 0.5, 3.0, 20000);
  const cplx v = free_bra_eval(cfg, cplx{0.0, 1.0}, phi).value;
  CHECK(std::abs(v - cplx{0.0, std::sqrt(2.0 / kPi) * sh}) <= 1e-12 * sh);
  CHECK(free_ket_eval(cfg, cplx{0.0, 1.0}, phi).kind == FunctionalKind::ket_free);
  // no potential: the interacting functionals are the free ones
  const PhysicalConfig free = PhysicalConfig::free_particle();
  for (cplx q : {cplx{1.0, -2.0}, cplx{-3.0, 0.5}, cplx{6.0, 3.0}}) {
    const cplx f = free_bra_eval(free, q, phi).value;
    CHECK(std::abs(bra_eval(free, q, phi, Sign::plus).value - f) <= 1e-13 * std::abs(f));
    CHECK(std::abs(ket_eval(free, q, phi, Sign::minus).value - f) <= 1e-13 * std::abs(f));
  }
  // H0 eigenequation
  const TestFunction h0phi = phi.apply_H(free);
  for (cplx q : {cplx{1.0, -2.0}, cplx{4.0, 1.5}}) {
    const cplx lhs = free_ket_eval(cfg, q, h0phi).value;
    const cplx rhs = cfg.h2m() * q * q * free_ket_eval(cfg, q, phi).value;
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
  }
}

TEST_CASE("eigenequations") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  for (const TestFunction& phi : {bump(2.0, 6.0), gauss_damped(cfg, 1, 2.0, 1.0)}) {
    const TestFunction hphi = phi.apply_H(cfg);
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> re(-6.0, 6.0), im(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
      const cplx q{re(gen), im(gen)};
      for (Sign s : {Sign::plus, Sign::minus}) {
        const cplx e = cfg.h2m() * q * q;
        const cplx k1 = ket_eval(cfg, q, hphi, s).value, k0 = ket_eval(cfg, q, phi, s).value;
        CHECK(std::abs(k1 - e * k0) <= 1e-8 * std::abs(e * k0));
        const cplx b1 = bra_eval(cfg, q, hphi, s).value, b0 = bra_eval(cfg, q, phi, s).value;
        CHECK(std::abs(b1 - e * b0) <= 1e-8 * std::abs(e * b0));
      }
    }
  }
}

TEST_CASE("residues") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const TestFunction phi = bump(2.0, 6.0, 1);
  const cplx zp = refined_zero(cfg, kZ1, Sign::plus);
  const cplx zm = -zp;  // zero of J-, a pole of the plus bra

  SUBCASE("limit of (q - q0) bra(q)") {
    const ContinuedTransform ct(cfg, phi);
    for (auto [q0, kind] : {std::pair{zm, FunctionalKind::residue_bra}, std::pair{zp, FunctionalKind::residue_ket}}) {
      auto f = [&](double h) {
        const cplx q = q0 + h * std::polar(1.0, 0.7);
        return (q - q0) * (kind == FunctionalKind::residue_bra ? ct.bra(q, Sign::plus) : ct.ket(q, Sign::plus));
      };
      // Richardson on h, h/2, h/4
      const double h = 4e-4;
      const cplx r1 = 2.0 * f(h / 2) - f(h), r2 = 2.0 * f(h / 4) - f(h / 2);
      const cplx limit = (4.0 * r2 - r1) / 3.0;
      const cplx res = residue_eval(cfg, q0, phi, Sign::plus, kind).value;
      CHECK(std::abs(res - limit) <= 1e-7 * std::abs(res));
    }
  }
  SUBCASE("pole inheritance: slope -1") {
    const ContinuedTransform ct(cfg, phi);
    // two decades apart, close enough that the regular part is negligible
    const double a = std::abs(ct.bra(zm + 1e-4, Sign::plus)), b = std::abs(ct.bra(zm + 1e-6, Sign::plus));
    CHECK(std::log10(b / a) / 2.0 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(ct.bra(zm, Sign::plus), Error);
    // the minus bra has its poles at Z+, so zm is a regular point for it
    CHECK(std::isfinite(std::abs(ct.bra(zm, Sign::minus))));
  }
  SUBCASE("linearity") {
    const TestFunction g = bump(2.5, 7.0);
    const cplx r1 = residue_eval(cfg, zp, phi, Sign::plus, FunctionalKind::residue_ket).value;
    const cplx r2 = residue_eval(cfg, zp, g, Sign::plus, FunctionalKind::residue_ket).value;
    // combination evaluated through the same radial integral
    const ContinuedTransform c1(cfg, phi), c2(cfg, g);
    const cplx combo = 2.5 * c1.residue(zp, Sign::plus, FunctionalKind::residue_ket) +
                       c2.residue(zp, Sign::plus, FunctionalKind::residue_ket);
    CHECK(std::abs(combo - (2.5 * r1 + r2)) <= 1e-10 * std::abs(combo));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(residue_eval(cfg, cplx{2.0, -0.3}, phi, Sign::plus, FunctionalKind::residue_ket), Error);
    CHECK_THROWS_AS(residue_eval(PhysicalConfig::free_particle(), zp, phi, Sign::plus, FunctionalKind::residue_ket),
                    Error);
    try {
      residue_eval(cfg, 3.0, phi, Sign::plus, FunctionalKind::residue_bra);
      FAIL("expected not_a_pole");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::not_a_pole);
    }
    try {
      bra_eval(cfg, zp, phi, Sign::minus);
      FAIL("expected at_pole");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::at_pole);
    }
  }
}

TEST_CASE("complex delta functional") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const TestFunction phi = bump(2.0, 6.0, 1);
  const ComplexDeltaReport real = complex_delta_check(cfg, 3.0, phi, Sign::plus);
  CHECK(std::abs(real.direct - forward(cfg, phi, Channel::plus, 3.0)) <= 1e-9 * std::abs(real.direct));
  CHECK(real.discrepancy <= 1e-9);
  CHECK(complex_delta_check(cfg, cplx{2.0, -0.5}, phi, Sign::plus).discrepancy <= 1e-6);
  CHECK(complex_delta_check(cfg, cplx{4.5, 0.8}, phi, Sign::minus).discrepancy <= 1e-6);
  // 0.05 away from the pole of the plus bra at -conj of the lowest resonance
  const cplx zm = -refined_zero(cfg, kZ1, Sign::plus);
  CHECK(complex_delta_check(cfg, zm + cplx{0.0, 0.05}, phi, Sign::plus).discrepancy <= 1e-4);
}

TEST_CASE("tail budget") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const TestFunction g = gauss_damped(cfg, 1, 2.0, 1.0);
  CHECK_NOTHROW(bra_eval(cfg, cplx{1.0, -4.0}, g, Sign::plus));
  try {
    bra_eval(cfg, cplx{1.0, -30.0}, g, Sign::plus);
    FAIL("expected tail_budget");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::tail_budget);
  }
  // compact support never runs out of budget
  CHECK(std::isfinite(std::abs(bra_eval(cfg, cplx{1.0, -30.0}, bump(2.0, 3.0), Sign::plus).value)));
}

TEST_CASE("continuity bound") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const std::vector<TestFunction> small{bump(2.0, 6.0), bump(2.5, 7.0, 1)};
  std::vector<TestFunction> large = small;
  large.push_back(bump(3.0, 8.0, 2));
  large.push_back(gauss_damped(cfg, 1, 2.0, 1.0));
  for (cplx q : {cplx{1.5, -0.5}, cplx{2.5, 1.0}, cplx{-1.0, -2.0}}) {
    const ContinuityReport a = continuity_bound_check(cfg, q, Sign::plus, small);
    const ContinuityReport b = continuity_bound_check(cfg, q, Sign::plus, large);
    CHECK(std::isfinite(a.constant));
    CHECK(a.constant > 0.0);
    CHECK(b.constant >= a.constant);
    const ContinuityReport bra = continuity_bound_check(cfg, q, Sign::plus, small, FunctionalSide::bra);
    CHECK(std::isfinite(bra.constant));
  }
  // a Gaussian member whose tail cannot carry the weight is skipped, not fatal
  const ContinuityReport far = continuity_bound_check(cfg, cplx{3.5, -0.5}, Sign::plus, large);
  CHECK(far.entries.back().skipped);
  CHECK(far.constant > 0.0);
  // V0 = 0: J = 1
  const ContinuityReport fr = continuity_bound_check(PhysicalConfig::free_particle(), cplx{1.5, -0.5}, Sign::plus, small);
  CHECK(fr.constant > 0.0);
}

TEST_CASE("growth bounds in the analytic half planes") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const TestFunction phi = bump(2.0, 6.0);
  GrowthGrid coarse;
  coarse.radius = 8.0;
  coarse.n_re = 17;
  coarse.n_im = 9;
  GrowthGrid fine = coarse;
  fine.n_re = 33;
  fine.n_im = 17;
  for (Channel ch : {Channel::plus, Channel::minus}) {
    for (int np : {0, 1, 2}) {
      const Prop3Report a = prop3_bound(cfg, phi, ch, np, 1.0, coarse);
      const Prop3Report b = prop3_bound(cfg, phi, ch, np, 1.0, fine);
      CHECK(std::isfinite(a.sup));
      CHECK(std::abs(a.sup - b.sup) <= 0.1 * b.sup);
      CHECK(b.skipped == 0);
    }
    // weaker damping can only raise the supremum
    CHECK(prop3_bound(cfg, phi, ch, 0, 2.0, coarse).sup >= prop3_bound(cfg, phi, ch, 0, 1.0, coarse).sup);
  }
  CHECK(std::isfinite(prop3_bound(cfg, phi, Channel::free, 1, 1.0, coarse).sup));
}
