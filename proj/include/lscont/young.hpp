#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace lscont {

/// Increasing continuous f on [0, inf) with f(0) = 0 and f -> inf.
/// Closed forms for the inverse and the primitive are used when given.
struct MonotoneFunction {
  std::function<double(double)> f;
  std::function<double(double)> inverse;   // optional
  std::function<double(double)> integral;  // optional: int_0^x f

  double operator()(double x) const { return f(x); }
  /// f^{-1}(y), by bisection when no closed form was given. Throws
  /// invalid_argument if f stays below y (not invertible on the range).
  double invert(double y) const;
  /// The inverse as a MonotoneFunction (bisection-backed unless closed form).
  MonotoneFunction inverse_function() const;
};

/// mu(xi) = xi^{p-1}, p > 1, with closed-form primitive and inverse.
MonotoneFunction power_function(double p);

/// M(x) = int_0^x mu.
double M_from_mu(const MonotoneFunction& mu, double x);
/// Omega(y) = int_0^y omega.
double omega_from_omega(const MonotoneFunction& omega, double y);

struct YoungReport {
  double product = 0.0;  // x y
  double bound = 0.0;    // M(x) + Omega(y)
  double slack = 0.0;    // bound - product, >= 0 up to rounding
  bool holds = false;
  bool equality = false;  // y = mu(x) within 1e-9 (relative), where the bound is attained
};

/// x y <= M(x) + Omega(y) with Omega built from omega = mu^{-1}.
YoungReport young_check(const MonotoneFunction& mu, double x, double y);

struct YoungSweep {
  long samples = 0;
  long violations = 0;
  long equality_samples = 0;   // samples drawn on y = mu(x)
  long equality_detected = 0;  // of those, flagged as equality with slack ~ 0
  double worst = 0.0;          // largest relative violation (0 if none)
  std::uint64_t seed = 0;
};

/// Random (x, y, p) with p in [1.1, 5], 1/p + 1/p' = 1: x y <= x^p/p + y^p'/p'.
/// One in ten samples is placed on the equality curve y = x^{p-1}.
YoungSweep young_power_sweep(long n, std::uint64_t seed);
/// Random (x, y, alpha): x y <= alpha x^2/2 + y^2/(2 alpha); equality at y = alpha x.
YoungSweep young_scaled_sweep(long n, std::uint64_t seed);

}  // namespace lscont
