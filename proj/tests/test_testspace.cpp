#include "doctest.h"
#include "lscont/testspace.hpp"

#include <cmath>
#include <random>

using namespace lscont;

namespace {

double fd2(const TestFunction& f, double r, double h) {
  return (-f.value(r + 2 * h) + 16 * f.value(r + h) - 30 * f.value(r) + 16 * f.value(r - h) - f.value(r - 2 * h)) /
         (12 * h * h);
}
double fd1(const TestFunction& f, double r, double h) {
  return (-f.value(r + 2 * h) + 8 * f.value(r + h) - 8 * f.value(r - h) + f.value(r - 2 * h)) / (12 * h);
}
// plain composite Simpson, independent of the library quadrature
template <class F>
double simpson(F f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("bump basics") {
  const TestFunction f = bump(0.0, 1.0);
  CHECK(f.value(0.0) == 0.0);
  CHECK(f.value(1.0) == 0.0);
  CHECK(f.d1(0.0) == 0.0);
  CHECK(f.d1(1.0) == 0.0);
  CHECK(f.value(0.5) == doctest::Approx(std::exp(-1.0)));
  const TestFunction g = bump(2.0, 4.0);
  CHECK(g.value(4.5) == 0.0);
  CHECK(g.value(100.0) == 0.0);
  CHECK(simpson([&](double r) { return g.value(r) * g.value(r); }, 2.0, 4.0, 2000) > 0.0);
  CHECK(l2_norm(g) == doctest::Approx(std::sqrt(simpson([&](double r) { return g.value(r) * g.value(r); }, 2.0, 4.0, 4000))).epsilon(1e-10));
  CHECK_THROWS_AS(bump(1.0, 1.0), Error);
  CHECK(g.label() == "bump:2,4");
}

TEST_CASE("gauss damped membership") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  for (double delta : {-1.0, 0.3}) {
    const TestFunction f = gauss_damped(cfg, 2, 3.0, delta);
    for (double r : {0.0, cfg.a, cfg.b}) {
      CHECK(std::abs(f.value(r)) <= 1e-13);
      CHECK(std::abs(f.d1(r)) <= 1e-13);
      CHECK(std::abs(f.d2(r)) <= 1e-13);
    }
    double prev = 1e300;
    for (double r : {8.0, 10.0, 12.0}) {
      const double ratio = std::abs(f.value(r)) * std::exp(r * r);
      CHECK(ratio < prev);
      prev = ratio;
    }
    CHECK(prev < 1e-20);
    for (double r = f.tail_r0; r < 12.0; r += 0.37) CHECK(std::abs(f.value(r)) <= f.tail_m * std::exp(-r * r));
  }
  CHECK_THROWS_AS(gauss_damped(cfg, 1, 1.5), Error);
}

// bump derivatives by hand: g = exp(-1/t), t = 1 - x^2, p = g'/g = -2x/t^2
struct BumpOracle {
  double lo, hi;
  int deg;
  double d(double r, int k) const {
    const double x = (2 * r - lo - hi) / (hi - lo), dx = 2 / (hi - lo);
    if (std::abs(x) >= 1) return 0.0;
    const double t = 1 - x * x;
    const double g = std::exp(-1 / t);
    const double p = -2 * x / (t * t);
    const double dp = -2 / (t * t) - 8 * x * x / (t * t * t);
    const double m = std::pow(1 + x, deg);
    const double dm = deg >= 1 ? deg * std::pow(1 + x, deg - 1) : 0.0;
    const double ddm = deg >= 2 ? deg * (deg - 1) * std::pow(1 + x, deg - 2) : 0.0;
    if (k == 1) return dx * (g * p * m + g * dm);
    return dx * dx * (g * (p * p + dp) * m + 2 * g * p * dm + g * ddm);
  }
};

TEST_CASE("jet derivatives agree with closed forms") {
  std::mt19937 gen(5);
  for (const BumpOracle o : {BumpOracle{2.0, 6.0, 1}, BumpOracle{0.2, 0.8, 0}, BumpOracle{1.0, 1.5, 2}}) {
    const TestFunction f = bump(o.lo, o.hi, o.deg);
    std::uniform_real_distribution<double> u(o.lo, o.hi);
    for (int i = 0; i < 100; ++i) {
      const double r = u(gen);
      for (int k : {1, 2}) {
        const double ref = o.d(r, k);
        CHECK(std::abs(f.derivative(r, k) - ref) <= 1e-10 * std::abs(ref) + 1e-300);
      }
    }
  }
}

TEST_CASE("jet derivatives agree with finite differences") {
  // away from the flattening edges, where the local length scale is resolved
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  std::mt19937 gen(7);
  const TestFunction f = gauss_damped(cfg, 1, 2.0, 0.3);
  double sup1 = 0.0, sup2 = 0.0;
  for (double r = 0.0; r <= 6.0; r += 1e-3) {
    sup1 = std::max(sup1, std::abs(f.d1(r)));
    sup2 = std::max(sup2, std::abs(f.d2(r)));
  }
  std::uniform_real_distribution<double> u(2.4, 6.0);
  for (int i = 0; i < 100; ++i) {
    const double r = u(gen);
    const double h = 1e-3;
    const double ref2 = (16 * fd2(f, r, h / 2) - fd2(f, r, h)) / 15;
    CHECK(std::abs(f.d2(r) - ref2) <= 1e-8 * std::max(std::abs(ref2), 1e-3 * sup2));
    CHECK(std::abs(f.d1(r) - fd1(f, r, h)) <= 1e-8 * std::max(std::abs(f.d1(r)), 1e-3 * sup1));
  }
}

TEST_CASE("Hamiltonian action") {
  const PhysicalConfig free = PhysicalConfig::free_particle();
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const TestFunction f = bump(0.2, 0.9);
  const TestFunction hf = f.apply_H(free);
  for (double r : {0.3, 0.5, 0.77}) CHECK(hf.value(r) == doctest::Approx(-f.d2(r)).epsilon(1e-12));
  const TestFunction g = bump(1.1, 1.8);
  const TestFunction hg = g.apply_H(cfg);
  for (double r : {1.2, 1.5, 1.7}) CHECK(hg.value(r) == doctest::Approx(-g.d2(r) + 10.0 * g.value(r)).epsilon(1e-12));
  const TestFunction h2 = g.one_plus_H_power(cfg, 2);
  const TestFunction once = g.one_plus_H_power(cfg, 1);
  for (double r : {1.2, 1.5, 1.7}) {
    const double h = 2e-3;
    const double ref = 11.0 * once.value(r) - (16 * fd2(once, r, h / 2) - fd2(once, r, h)) / 15;
    CHECK(std::abs(h2.value(r) - ref) <= 1e-7 * std::abs(ref));
  }
  CHECK(hg.jet_order() == kJetOrder - 2);
}

TEST_CASE("norms") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const TestFunction f = bump(2.0, 4.0);
  for (int n = 1; n <= 5; ++n)
    for (int np = 0; np <= 2; ++np) CHECK(std::isfinite(norm_nnprime(cfg, f, n, np)));
  // n = 1, n' = 0 against an independent Simpson rule
  const double ref = std::sqrt(simpson(
      [&](double r) {
        const double w = r / (1 + r) * std::exp(0.5 * r * r) * f.value(r);
        return w * w;
      },
      2.0, 4.0, 4000));
  CHECK(norm_nnprime(cfg, f, 1, 0) == doctest::Approx(ref).epsilon(1e-9));
  const TestFunction g = gauss_damped(cfg, 1, 2.0);
  CHECK(std::isfinite(norm_nnprime(cfg, g, 3, 1)));
  try {
    norm_nnprime(cfg, g, 5, 0);
    FAIL("expected divergent norm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::divergent_norm);
  }
  CHECK_THROWS_AS(norm_nnprime(cfg, f, 0, 0), Error);
}

TEST_CASE("H is continuous in the n,n' norms") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  std::vector<TestFunction> fam = standard_family(cfg);
  fam.push_back(bump(1.1, 1.9));
  fam.push_back(gauss_damped(cfg, 2, 3.0, 0.3));
  for (const TestFunction& f : fam) {
    const TestFunction hf = f.apply_H(cfg);
    for (int n = 1; n <= 3; ++n) {
      if (!f.compact() && 2 * f.gauss_rate() <= n + 0.5) continue;
      for (int np = 0; np <= 2; ++np) {
        const double lhs = norm_nnprime(cfg, hf, n, np);
        const double rhs = norm_nnprime(cfg, f, n, np + 1) + norm_nnprime(cfg, f, n, np);
        CHECK(lhs <= rhs * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("parsing test function specs") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  CHECK(parse_test_function(cfg, "bump:0.2,0.8").label() == "bump:0.2,0.8");
  CHECK(parse_test_function(cfg, "bump:2,6,1").label() == "bump:2,6,1");
  const TestFunction g = parse_test_function(cfg, "gauss:deg=2,c=3");
  CHECK(g.gauss_rate() == 3.0);
  CHECK_THROWS_AS(parse_test_function(cfg, "gauss:deg=2,q=3"), Error);
  CHECK_THROWS_AS(parse_test_function(cfg, "sinc:1"), Error);
  CHECK_THROWS_AS(parse_test_function(cfg, "bump:1"), Error);
}
