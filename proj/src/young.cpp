#include "lscont/young.hpp"

#include <cmath>
#include <random>

#include "lscont/common.hpp"
#include "lscont/quadrature.hpp"

namespace lscont {

namespace {

double integrate(const MonotoneFunction& g, double x) {
  if (!(x >= 0.0)) throw Error(ErrorKind::invalid_argument, "argument must be nonnegative");
  if (x == 0.0) return 0.0;
  if (g.integral) return g.integral(x);
  const auto r = integrate_adaptive([&](double s) { return g.f(s); }, {0.0, x}, 1e-300, 1e-13);
  return r.value;
}

bool on_curve(double y, double target) { return std::abs(y - target) <= 1e-9 * std::max(1.0, std::abs(target)); }

}  // namespace

double MonotoneFunction::invert(double y) const {
  if (!(y >= 0.0)) throw Error(ErrorKind::invalid_argument, "inverse needs y >= 0");
  if (inverse) return inverse(y);
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  for (int i = 0; f(hi) < y; ++i) {
    if (i > 2000) throw Error(ErrorKind::invalid_argument, "function stays below " + std::to_string(y) + "; not invertible there");
    hi *= 2.0;
  }
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

MonotoneFunction MonotoneFunction::inverse_function() const {
  MonotoneFunction g;
  const MonotoneFunction self = *this;
  g.f = [self](double y) { return self.invert(y); };
  g.inverse = self.f;
  // Omega(y) = y f^{-1}(y) - M(f^{-1}(y)) when M is known in closed form
  if (self.integral)
    g.integral = [self](double y) {
      const double x = self.invert(y);
      return y * x - self.integral(x);
    };
  return g;
}

MonotoneFunction power_function(double p) {
  if (!(p > 1.0)) throw Error(ErrorKind::invalid_argument, "power needs p > 1");
  MonotoneFunction m;
  m.f = [p](double x) { return std::pow(x, p - 1.0); };
  m.inverse = [p](double y) { return std::pow(y, 1.0 / (p - 1.0)); };
  m.integral = [p](double x) { return std::pow(x, p) / p; };
  return m;
}

double M_from_mu(const MonotoneFunction& mu, double x) { return integrate(mu, x); }

double omega_from_omega(const MonotoneFunction& omega, double y) { return integrate(omega, y); }

YoungReport young_check(const MonotoneFunction& mu, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0)) throw Error(ErrorKind::invalid_argument, "Young's inequality needs x, y >= 0");
  YoungReport r;
  r.product = x * y;
  r.bound = M_from_mu(mu, x) + omega_from_omega(mu.inverse_function(), y);
  r.slack = r.bound - r.product;
  const double scale = std::max({1e-300, r.product, r.bound});
  r.holds = r.slack >= -1e-12 * scale;
  r.equality = on_curve(y, mu(x));
  return r;
}

YoungSweep young_power_sweep(long n, std::uint64_t seed) {
  YoungSweep s;
  s.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, 10.0), up(1.1, 5.0);
  for (long i = 0; i < n; ++i) {
    const double p = up(rng), x = ux(rng);
    const bool eq = i % 10 == 0;
    const double y = eq ? std::pow(x, p - 1.0) : ux(rng);
    const double pp = p / (p - 1.0);
    const double lhs = x * y, rhs = std::pow(x, p) / p + std::pow(y, pp) / pp;
    const double scale = std::max({1e-300, lhs, rhs});
    ++s.samples;
    if (rhs - lhs < -1e-12 * scale) {
      ++s.violations;
      s.worst = std::max(s.worst, (lhs - rhs) / scale);
    }
    if (eq) {
      ++s.equality_samples;
      if (std::abs(rhs - lhs) <= 1e-9 * scale) ++s.equality_detected;
    }
  }
  return s;
}

YoungSweep young_scaled_sweep(long n, std::uint64_t seed) {
  YoungSweep s;
  s.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, 10.0), ul(std::log(0.05), std::log(20.0));
  for (long i = 0; i < n; ++i) {
    const double alpha = std::exp(ul(rng)), x = ux(rng);
    const bool eq = i % 10 == 0;
    const double y = eq ? alpha * x : ux(rng);
    const double lhs = x * y, rhs = 0.5 * alpha * x * x + y * y / (2.0 * alpha);
    const double scale = std::max({1e-300, lhs, rhs});
    ++s.samples;
    if (rhs - lhs < -1e-12 * scale) {
      ++s.violations;
      s.worst = std::max(s.worst, (lhs - rhs) / scale);
    }
    if (eq) {
      ++s.equality_samples;
      if (std::abs(rhs - lhs) <= 1e-9 * scale) ++s.equality_detected;
    }
  }
  return s;
}

}  // namespace lscont
