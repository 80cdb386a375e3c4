#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lscont/jet.hpp"
#include "lscont/model.hpp"

namespace lscont {

inline constexpr int kJetOrder = 10;
using RJet = Jet<kJetOrder>;

struct Interval {
  double lo, hi;
};

/// Closed-form body of a test function: a value path and a Taylor-jet path.
class FunctionBody {
 public:
  virtual ~FunctionBody() = default;
  virtual double value(double r) const = 0;
  virtual RJet jet(double r) const = 0;
  /// Number of trustworthy jet coefficients beyond the value (derivative order).
  virtual int order() const { return kJetOrder; }
};

/// Smooth real function on [0, inf) vanishing with all derivatives at 0, a, b,
/// with compact support or a Gaussian tail exp(-c r^2).
class TestFunction {
 public:
  TestFunction(std::shared_ptr<const FunctionBody> body, std::vector<Interval> support, std::string label,
               double gauss_rate = 0.0);

  double value(double r) const { return body_->value(r); }
  double d1(double r) const { return derivative(r, 1); }
  double d2(double r) const { return derivative(r, 2); }
  double derivative(double r, int k) const;
  RJet jet(double r) const { return body_->jet(r); }
  int jet_order() const { return body_->order(); }
  double operator()(double r) const { return value(r); }

  /// Intervals outside of which the function vanishes (numerically, for
  /// Gaussian members: below ~1e-30 of its maximum).
  const std::vector<Interval>& support() const { return support_; }
  double support_begin() const { return support_.front().lo; }
  double support_end() const { return support_.back().hi; }
  /// c in exp(-c r^2); 0 for compactly supported members.
  double gauss_rate() const { return gauss_rate_; }
  bool compact() const { return gauss_rate_ == 0.0; }
  const std::string& label() const { return label_; }

  /// Tail certificate |value(r)| <= tail_m e^{-r^2} for r >= tail_r0.
  double tail_r0 = 0.0;
  double tail_m = 0.0;

  /// r -> -hbar^2/2m phi''(r) + V(r) phi(r), again a test function (two jet
  /// orders fewer).
  TestFunction apply_H(const PhysicalConfig& cfg) const;
  /// r -> ((1 + H)^n phi)(r) evaluated through jets.
  TestFunction one_plus_H_power(const PhysicalConfig& cfg, int n) const;

 private:
  TestFunction one_plus_H_power(const PhysicalConfig& cfg, int n, double alpha) const;

  std::shared_ptr<const FunctionBody> body_;
  std::vector<Interval> support_;
  std::string label_;
  double gauss_rate_;
};

/// exp(-1/(1-x^2)) mapped onto (lo, hi), times (1+x)^degree.
TestFunction bump(double lo, double hi, int degree = 0);

/// (1+r)^degree r^2 (r-a)^2 (r-b)^2 e^{-c r^2} s(r/delta) s((r-a)/delta) s((r-b)/delta)
/// with s the smooth step built from e^{-1/x}. delta <= 0 picks 0.05 a.
TestFunction gauss_damped(const PhysicalConfig& cfg, int degree, double c, double delta = -1.0);

/// "bump:lo,hi[,deg]" or "gauss:deg=2,c=3[,delta=0.3]".
TestFunction parse_test_function(const PhysicalConfig& cfg, const std::string& spec);

/// The members used by the verification suites: three compact bumps of
/// different width and weight and one Gaussian-damped function.
std::vector<TestFunction> standard_family(const PhysicalConfig& cfg);

/// ||phi||_{n,n'} = sqrt( int |(nr/(1+nr)) e^{n r^2/2} ((1+H)^{n'} phi)(r)|^2 dr ).
/// n >= 1. Throws divergent_norm when the Gaussian tail cannot absorb the
/// weight (2c <= n + 0.5) and invalid_argument when the jets are too short.
double norm_nnprime(const PhysicalConfig& cfg, const TestFunction& phi, int n, int nprime);

/// Plain L^2 norm on [0, inf).
double l2_norm(const TestFunction& phi);

}  // namespace lscont
