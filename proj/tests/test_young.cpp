#include "doctest.h"
#include "lscont/young.hpp"
#include "lscont/common.hpp"

#include <cmath>
#include <random>

using namespace lscont;

namespace {

// only the evaluator: primitives and inverses go through quadrature and bisection
MonotoneFunction bare(std::function<double(double)> f) {
  MonotoneFunction m;
  m.f = std::move(f);
  return m;
}

}  // namespace

TEST_CASE("primitives") {
  const MonotoneFunction id = bare([](double x) { return x; });
  for (double x : {0.0, 0.3, 1.0, 7.5}) CHECK(M_from_mu(id, x) == doctest::Approx(0.5 * x * x).epsilon(1e-13));
  const MonotoneFunction sq = bare([](double x) { return x * x; });
  for (double x : {0.5, 2.0, 4.0}) CHECK(M_from_mu(sq, x) == doctest::Approx(x * x * x / 3.0).epsilon(1e-13));
  CHECK(M_from_mu(power_function(3.0), 2.0) == doctest::Approx(8.0 / 3.0));

  // omega = inverse of xi^2 is sqrt; Omega(y) = (2/3) y^{3/2}
  const MonotoneFunction root = sq.inverse_function();
  for (double y : {0.25, 1.0, 9.0}) {
    CHECK(root(y) == doctest::Approx(std::sqrt(y)).epsilon(1e-14));
    CHECK(omega_from_omega(root, y) == doctest::Approx(2.0 / 3.0 * std::pow(y, 1.5)).epsilon(1e-10));
  }
  CHECK(omega_from_omega(root, 0.0) == 0.0);
  CHECK(omega_from_omega(id, 3.0) == doctest::Approx(4.5));
  CHECK_THROWS_AS(M_from_mu(id, -1.0), Error);

  SUBCASE("convexity of M") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    const MonotoneFunction mu = bare([](double x) { return std::sinh(x); });
    for (int i = 0; i < 200; ++i) {
      const double x = u(rng), y = u(rng);
      CHECK(M_from_mu(mu, 0.5 * (x + y)) <= 0.5 * (M_from_mu(mu, x) + M_from_mu(mu, y)) + 1e-12);
    }
  }
}

TEST_CASE("bisection inverse") {
  const MonotoneFunction mu = bare([](double x) { return x * x * x + x; });
  for (double y : {0.0, 1e-6, 2.0, 1e6}) CHECK(mu(mu.invert(y)) == doctest::Approx(y).epsilon(1e-12));
  const MonotoneFunction bounded = bare([](double x) { return std::atan(x); });
  CHECK_THROWS_AS(bounded.invert(2.0), Error);
  CHECK_THROWS_AS(young_check(bounded, 1.0, 2.0), Error);
}

TEST_CASE("Young's inequality") {
  const MonotoneFunction id = bare([](double x) { return x; });
  const YoungReport eq = young_check(id, 1.0, 1.0);
  CHECK(eq.holds);
  CHECK(eq.equality);
  CHECK(eq.slack == doctest::Approx(0.0));

  // the quadratic case with scaling: mu(xi) = alpha xi
  for (double alpha : {0.5, 1.0, 2.0}) {
    const MonotoneFunction mu = bare([alpha](double x) { return alpha * x; });
    for (double x : {0.3, 1.0, 4.0})
      for (double y : {0.1, 2.0, alpha * x}) {
        const YoungReport r = young_check(mu, x, y);
        CHECK(r.holds);
        CHECK(r.bound == doctest::Approx(0.5 * alpha * x * x + y * y / (2.0 * alpha)).epsilon(1e-9));
        CHECK(r.equality == (y == alpha * x));
        if (r.equality) CHECK(std::abs(r.slack) <= 1e-9 * r.bound);
      }
  }
  // general mu through quadrature and bisection
  const MonotoneFunction mu = bare([](double x) { return std::expm1(x); });
  for (double x : {0.5, 2.0})
    for (double y : {0.2, 3.0, std::expm1(x)}) {
      const YoungReport r = young_check(mu, x, y);
      CHECK(r.holds);
      if (r.equality) CHECK(std::abs(r.slack) <= 1e-9 * r.bound);
    }
}

TEST_CASE("property sweeps") {
  const YoungSweep p = young_power_sweep(10000, 20240501);
  CHECK(p.samples == 10000);
  CHECK(p.violations == 0);
  CHECK(p.equality_samples == 1000);
  CHECK(p.equality_detected == p.equality_samples);

  const YoungSweep s = young_scaled_sweep(10000, 20240501);
  CHECK(s.violations == 0);
  CHECK(s.equality_detected == s.equality_samples);

  // deterministic given the seed
  CHECK(young_power_sweep(500, 3).worst == young_power_sweep(500, 3).worst);
}

TEST_CASE("the exponential split used against Gaussian tails") {
  // |Im q| r <= alpha r^2 / 2 + |Im q|^2 / (2 alpha)
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0), ua(0.1, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double im = u(rng), r = u(rng), alpha = ua(rng);
    const MonotoneFunction mu = bare([alpha](double x) { return alpha * x; });
    CHECK(young_check(mu, r, im).holds);
    CHECK(std::exp(im * r) <= std::exp(alpha * r * r / 2.0) * std::exp(im * im / (2.0 * alpha)) * (1.0 + 1e-12));
  }
}
