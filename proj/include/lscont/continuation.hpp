#pragma once

#include <string>
#include <vector>

#include "lscont/transforms.hpp"

namespace lscont {

enum class FunctionalKind { bra_plus, bra_minus, ket_plus, ket_minus, bra_free, ket_free, residue_bra, residue_ket };
const char* to_string(FunctionalKind k);

struct FunctionalValue {
  cplx q;
  FunctionalKind kind;
  cplx value;
  double quad_error = 0.0;
};

/// Radial rule for one test function, reusable over many complex q. The
/// rule resolves oscillations up to |Re q| = q_abs_max.
class ContinuedTransform {
 public:
  ContinuedTransform(const PhysicalConfig& cfg, const TestFunction& phi, const QuadratureSpec& quad = {},
                     double q_abs_max = 0.0);

  /// int phi(r) chi(r;q) dr with the regular solution chi; entire in q.
  cplx regular_integral(cplx q) const;
  /// int phi(r) sin(qr) dr.
  cplx free_integral(cplx q) const;

  /// <+-q|phi> = int phi chi-+(r;q) dr. Throws at_pole on Z-+.
  cplx bra(cplx q, Sign sign) const;
  /// <phi|q+-> = int conj(phi) chi+-(r;q) dr. Throws at_pole on Z+-.
  cplx ket(cplx q, Sign sign) const;
  cplx free_bra(cplx q) const;
  cplx free_ket(cplx q) const { return free_bra(q); }  // phi is real
  /// Residue of bra(., sign) (kind residue_bra) or ket(., sign) at a simple
  /// zero q0 of the relevant Jost function.
  cplx residue(cplx q0, Sign sign, FunctionalKind kind) const;

  /// Throws tail_budget unless the Gaussian falloff can absorb e^{|Im q| r}.
  void check_budget(cplx q) const;
  const TestFunction& phi() const { return phi_; }
  const PhysicalConfig& config() const { return cfg_; }

 private:
  PhysicalConfig cfg_;
  TestFunction phi_;
  RadialRule rule_;
};

FunctionalValue bra_eval(const PhysicalConfig& cfg, cplx q, const TestFunction& phi, Sign sign,
                         const QuadratureSpec& quad = {});
FunctionalValue ket_eval(const PhysicalConfig& cfg, cplx q, const TestFunction& phi, Sign sign,
                         const QuadratureSpec& quad = {});
FunctionalValue free_bra_eval(const PhysicalConfig& cfg, cplx q, const TestFunction& phi,
                              const QuadratureSpec& quad = {});
FunctionalValue free_ket_eval(const PhysicalConfig& cfg, cplx q, const TestFunction& phi,
                              const QuadratureSpec& quad = {});
/// kind must be residue_bra or residue_ket. Throws not_a_pole unless q0 is a
/// zero of J-+ (bra) or J+- (ket).
FunctionalValue residue_eval(const PhysicalConfig& cfg, cplx q0, const TestFunction& phi, Sign sign,
                             FunctionalKind kind, const QuadratureSpec& quad = {});

struct ComplexDeltaReport {
  cplx q;
  cplx direct;       // bra_eval
  cplx continued;    // from real-axis samples of forward(sign, phi)
  double discrepancy = 0.0;  // |direct - continued| / |direct|
  double interval_lo = 0.0, interval_hi = 0.0;
  int samples = 0;
};

/// Two evaluations of the complex delta functional at q: directly, and by
/// continuing real-axis samples k -> forward(sign, phi)(k) (at least `samples` of
/// them, more when the support of phi is wide). The samples are
/// multiplied by the (analytic) Jost factor J-+(k), which removes the poles,
/// interpolated at Chebyshev points around Re q and continued to q.
ComplexDeltaReport complex_delta_check(const PhysicalConfig& cfg, cplx q, const TestFunction& phi, Sign sign,
                                       const QuadratureSpec& quad = {}, int samples = 96);

enum class FunctionalSide { bra, ket };

struct ContinuityEntry {
  std::string label;
  double constant = 0.0;  // |value| |J| / (e^{2n+2} ||phi||_{n+1,0})
  bool skipped = false;
  std::string reason;
};
struct ContinuityReport {
  cplx q;
  int n = 0;
  double constant = 0.0;  // max over the family
  std::vector<ContinuityEntry> entries;
};

/// Smallest C with |<phi|q+->| <= C e^{2n+2} / |J+-(q)| ||phi||_{n+1,0}, n = ceil|q|
/// (bra side: the bra functional and J-+). Members whose norm diverges are skipped.
ContinuityReport continuity_bound_check(const PhysicalConfig& cfg, cplx q, Sign sign,
                                        const std::vector<TestFunction>& family,
                                        FunctionalSide side = FunctionalSide::ket, const QuadratureSpec& quad = {});

struct GrowthGrid {
  double radius = 8.0;  // |q| <= radius
  int n_re = 33, n_im = 17;
};

struct Prop3Report {
  double sup = 0.0;
  cplx argmax;
  int points = 0;
  int skipped = 0;  // grid points on the pole guard or outside the tail budget
};

/// sup |(1 + hbar^2 q^2/2m)^{n'} phi^+-(q)| e^{-|Im q|^2/(2 alpha)} over the half
/// disc where phi^+- is analytic: Im q <= 0 for plus, Im q >= 0 for minus.
/// The free variant uses chi0 and the whole disc.
Prop3Report prop3_bound(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel, int nprime,
                        double alpha, const GrowthGrid& grid = {}, const QuadratureSpec& quad = {});

}  // namespace lscont
