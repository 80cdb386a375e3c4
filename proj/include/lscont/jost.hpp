#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lscont/model.hpp"

namespace lscont {

/// Coefficients of the regular solution
///   r < a:      sin(qr)
///   a < r < b:  j1 e^{i kappa r} + j2 e^{-i kappa r}
///   r > b:      j3 e^{i q r} + j4 e^{-i q r}
/// When kappa is (numerically) zero the exponential pair degenerates; then
/// `middle_degenerate` is set, j1/j2 are NaN and the middle region is
/// mid_const + mid_slope * r.
struct MatchingCoefficients {
  cplx j1, j2, j3, j4;
  bool middle_degenerate = false;
  cplx mid_const, mid_slope;
};

struct JostPair {
  cplx plus;
  cplx minus;
};

/// Regular solution at fixed q. Construction costs a handful of complex trig
/// calls; afterwards chi(r) is cheap. The middle region is evaluated through
/// cos(kappa x) and sin(kappa x)/kappa, which are even in kappa, so nothing
/// except j1/j2 depends on the kappa branch.
class ShellSolution {
 public:
  ShellSolution(const PhysicalConfig& cfg, cplx q);
  /// Explicit kappa branch (must satisfy kappa^2 = q^2 - 2mV0/hbar^2).
  ShellSolution(const PhysicalConfig& cfg, cplx q, cplx kappa);

  cplx q() const { return q_; }
  cplx kappa() const { return kappa_; }

  cplx value(double r) const;
  cplx derivative(double r) const;

  /// chi(b) and chi'(b).
  cplx u_b() const { return u_; }
  cplx du_b() const { return du_; }

  MatchingCoefficients coefficients() const;
  /// Throws degenerate at q = 0.
  JostPair jost() const;
  /// d/dq of J+ and J-.
  JostPair jost_derivative() const;
  cplx jost(Sign side) const;
  cplx jost_derivative(Sign side) const;

 private:
  bool boundary_form_ok(Sign side, cplx J) const;
  std::pair<cplx, cplx> wronskian_form(Sign side, bool with_derivative) const;

  PhysicalConfig cfg_;
  cplx q_, kappa_, w_;
  cplx s_, c_;   // sin(qa), cos(qa)
  cplx C_, S_;   // cos(kappa d), sin(kappa d)/kappa, d = b - a
  cplx u_, du_;  // chi(b), chi'(b)
};

/// cos(kappa x) and sin(kappa x)/kappa as entire functions of w = kappa^2.
void cos_sinc(cplx w, cplx kappa, double x, cplx& cos_out, cplx& sinc_out);

MatchingCoefficients matching_coefficients(const PhysicalConfig& cfg, cplx q);
cplx regular_solution(const PhysicalConfig& cfg, double r, cplx q);
JostPair jost_pm(const PhysicalConfig& cfg, cplx q);
JostPair jost_derivative(const PhysicalConfig& cfg, cplx q);

/// Regular solution at real k > 0 in real arithmetic, plus J+(k). J-(k) is
/// its conjugate on the real axis.
class RealShell {
 public:
  RealShell(const PhysicalConfig& cfg, double k);
  double k() const { return k_; }
  double value(double r) const;
  /// |chi(r)| <= this for r >= b.
  double outer_bound() const { return std::hypot(u_, du_ / k_); }
  cplx jost_plus() const { return jost_; }

 private:
  double a_, b_, k_, w_, s_, c_, u_, du_;
  cplx jost_;
};

/// Near-zero guard: true if q is within ~1e-8 (Newton distance) of a zero of J.
inline bool near_jost_zero(cplx j, cplx dj) { return std::abs(j) < 1e-8 * std::abs(dj); }

/// J-(q)/J+(q). At a zero of J+ throws at_pole with the location attached.
cplx s_matrix(const PhysicalConfig& cfg, cplx q);

/// C in the large-|q| form lambda(q) = 1 - C q^{-2} e^{2iqb}; C = m V0 / (2 hbar^2).
double lambda_coefficient(const PhysicalConfig& cfg);
cplx lambda_asymptote(const PhysicalConfig& cfg, cplx q);

struct SymmetryViolation {
  std::string relation;
  double violation;
};

struct SymmetryReport {
  double max_violation = 0.0;
  std::string worst;
  std::vector<SymmetryViolation> entries;
};

/// Checks every parity/conjugation identity of the matching construction at q.
/// The transformed points use the continued branch kappa(-q) = -kappa(q),
/// kappa(conj q) = conj kappa(q), which is the convention those identities assume.
SymmetryReport symmetry_suite(const PhysicalConfig& cfg, cplx q);

}  // namespace lscont
