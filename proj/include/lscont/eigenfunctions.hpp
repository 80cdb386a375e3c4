#pragma once

#include <vector>

#include "lscont/jost.hpp"

namespace lscont {

enum class EigenKind { plus, minus, free, residue_plus, residue_minus };

struct EigenfunctionSample {
  double r;
  cplx q;
  cplx value;
  EigenKind kind;
};

/// sqrt(2/pi) chi(r;q) / J+-(q). Throws at_pole within the near-zero guard of
/// J+- (use residue_chi_pm there) and degenerate at q = 0.
cplx chi_pm(const PhysicalConfig& cfg, double r, cplx q, Sign sign);

/// sqrt(2/pi) sin(qr).
cplx chi_zero(double r, cplx q);

/// Residue of chi_pm at a simple zero q0 of J+-: sqrt(2/pi) chi(r;q0) / J+-'(q0).
cplx residue_chi_pm(const PhysicalConfig& cfg, double r, cplx q0, Sign sign);

/// Local scale for Jost-zero tolerances, max(1, |q|^2).
inline double jost_scale(cplx q) { return std::max(1.0, std::norm(q)); }

/// chi_pm at fixed q for many radii; the pole guard runs once.
class LSEigenfunction {
 public:
  LSEigenfunction(const PhysicalConfig& cfg, cplx q, Sign sign);
  cplx operator()(double r) const { return factor_ * sol_.value(r); }
  cplx jost() const { return jost_; }
  const ShellSolution& solution() const { return sol_; }

 private:
  ShellSolution sol_;
  cplx jost_, factor_;
};

/// Rectangular grid of wave numbers and a set of radii.
struct GrowthRegion {
  double re_min = -10, re_max = 10, im_min = -10, im_max = 10;
  int n_re = 41, n_im = 41;
  std::vector<double> radii;
};

struct GrowthReport {
  // sup |chi| / [(|q|r/(1+|q|r)) e^{|Im q| r}]
  double sup_chi = 0.0;
  cplx argmax_q;
  double argmax_r = 0.0;
  // same ratio for chi+ and chi- (the 1/|J+-| factor included)
  double sup_plus = 0.0;
  double sup_minus = 0.0;
  bool finite = true;
  int points = 0;
  int skipped_near_poles = 0;  // grid points inside the pole margin
};

/// Points within `pole_margin` (Newton distance |J/J'|) of a Jost zero are
/// skipped for the chi+- ratios and counted.
GrowthReport growth_bound_check(const PhysicalConfig& cfg, const GrowthRegion& region,
                                double pole_margin = 0.05);

}  // namespace lscont
