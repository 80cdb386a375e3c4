#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "lscont/jost.hpp"
#include "lscont/quadrature.hpp"
#include "lscont/testspace.hpp"

namespace lscont {

enum class Channel { plus, minus, free };
const char* to_string(Channel c);
Channel parse_channel(const std::string& s);

struct QuadratureSpec {
  enum class Scheme { gauss_legendre_composite, adaptive };
  Scheme scheme = Scheme::gauss_legendre_composite;
  double r_max = 12.0;   // in units of a
  double k_max = 120.0;  // in units of 1/a
  int panels = 1;        // panels per two oscillation periods at the largest k (or r)
  int order = 20;        // Gauss-Legendre points per panel
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
  std::vector<double> split_points;  // a and b are always added

  /// r_max and k_max in absolute units for this geometry.
  double r_limit(const PhysicalConfig& cfg) const { return r_max * cfg.a; }
  double k_limit(const PhysicalConfig& cfg) const { return k_max / cfg.a; }
  /// Throws invalid_argument for nonpositive extents, panels < 1 or order outside [2, 200].
  void validate() const;
};

/// Zeros of J+ within `depth` of the positive real axis up to k_limit,
/// cached per configuration. Empty for V0 = 0.
const std::vector<cplx>& near_axis_resonances(const PhysicalConfig& cfg, double k_limit, double depth);

/// Composite rule on [lo, hi] with panels no wider than h_max, graded
/// geometrically toward the projections of `singular` points so that every
/// panel is shorter than its distance to them.
NodeSet graded_rule(double lo, double hi, double h_max, int order, const std::vector<cplx>& singular);

/// Radial quadrature for one test function: nodes over its support (cut at
/// r_max) split at a, b and any extra split points.
struct RadialRule {
  NodeSet nodes;
  std::vector<double> wphi;  // w_i phi(r_i)
  double tail_r;             // truncation radius (inf-norm support end if compact)
  double tail_weight;        // bound on int_{tail_r}^inf |phi|
};
RadialRule radial_rule(const PhysicalConfig& cfg, const TestFunction& phi, const QuadratureSpec& quad,
                       double k_top);

struct ForwardResult {
  cplx value;
  double quad_error;  // panel-rule estimate
  double tail_bound;  // bound on the discarded r > r_max part
};

/// int phi(r) conj(chi_channel(r;k)) dr.
ForwardResult forward_detail(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel, double k,
                             const QuadratureSpec& quad = {});
cplx forward(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel, double k,
             const QuadratureSpec& quad = {});

/// chi_channel(r;k) at real k > 0 (chi+- = sqrt(2/pi) chi / J+-, chi0 = sqrt(2/pi) sin).
cplx chi_channel(const PhysicalConfig& cfg, Channel channel, double r, double k);

/// A wave-number representation f(k) on a quadrature grid over (0, k_max],
/// plus an evaluator for off-grid k. Immutable.
class SpectralFunction {
 public:
  using Evaluator = std::function<cplx(double)>;
  SpectralFunction(std::vector<double> k, std::vector<double> w, std::vector<cplx> values, Evaluator eval);

  /// Samples forward(channel, phi) on spectral_grid(cfg, quad). The grid
  /// depends only on (cfg, quad), so transforms of different test functions
  /// can be combined node by node.
  static SpectralFunction transform(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel,
                                    const QuadratureSpec& quad = {});

  const std::vector<double>& k() const { return k_; }
  const std::vector<double>& weights() const { return w_; }
  const std::vector<cplx>& values() const { return v_; }
  std::size_t size() const { return k_.size(); }
  double k_max() const { return k_.empty() ? 0.0 : k_.back(); }
  cplx operator()(double k) const { return eval_(k); }

  /// g(k, f(k)) on the same grid; the evaluator is composed as well.
  SpectralFunction map(const std::function<cplx(double, cplx)>& g) const;

  /// int |f|^2 dk on the grid.
  double norm2() const;
  /// int conj(f) g dk; both on the same grid.
  cplx inner(const SpectralFunction& g) const;

  /// Estimate of int_{k_max}^{2 k_max} |f|^2 dk from the evaluator (doubled as
  /// a safety margin); the part of the L^2 norm squared the grid leaves out.
  double tail_norm2(int samples = 400) const;
  /// Same for int |f| dk, which bounds the pointwise truncation of inverse().
  double tail_l1(int samples = 400) const;

 private:
  std::vector<double> k_, w_;
  std::vector<cplx> v_;
  Evaluator eval_;
};

/// The k-grid used by SpectralFunction::transform.
/// Panels of one period of e^{i k 2 r_max}, graded toward near-axis resonances.
const NodeSet& spectral_grid(const PhysicalConfig& cfg, const QuadratureSpec& quad);

/// int f(k) chi_channel(r;k) dk over the grid of f.
cplx inverse(const PhysicalConfig& cfg, const SpectralFunction& f, Channel channel, double r);
std::vector<cplx> inverse(const PhysicalConfig& cfg, const SpectralFunction& f, Channel channel,
                          const std::vector<double>& r);

/// Omega+-(phi) = F+-^{-1} F0 phi, evaluable at any r.
class MollerImage {
 public:
  MollerImage(const PhysicalConfig& cfg, SpectralFunction free_rep, Sign sign);
  cplx operator()(double r) const { return inverse(cfg_, f0_, channel_, r); }
  std::vector<cplx> operator()(const std::vector<double>& r) const { return inverse(cfg_, f0_, channel_, r); }
  const SpectralFunction& free_representation() const { return f0_; }

 private:
  PhysicalConfig cfg_;
  SpectralFunction f0_;
  Channel channel_;
};
MollerImage moller_apply(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign,
                         const QuadratureSpec& quad = {});

struct MollerCheck {
  double isometry = 0.0;      // | ||Omega phi||_{L2(0,R)} - ||phi|| | / ||phi||
  double intertwining = 0.0;  // ||H Omega phi - Omega H0 phi||_{L2(0,R)} / ||phi||, H applied spectrally
  double radius = 0.0;        // R
};
/// Both sides are evaluated in r-space on [0, R]; R defaults to 40 a, where
/// the algebraic tail of Omega phi carries less than 1e-6 of the norm for the
/// standard family.
MollerCheck moller_check(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign,
                         const QuadratureSpec& quad = {}, double radius = 0.0);

/// int conj(F- phi_minus) S F+ phi_plus dk.
cplx s_matrix_element(const PhysicalConfig& cfg, const TestFunction& phi_minus, const TestFunction& phi_plus,
                      const QuadratureSpec& quad = {});

struct TransformCheck {
  double parseval = 0.0;     // | ||F phi|| - ||phi|| | / ||phi||
  double roundtrip = 0.0;    // max |F^{-1} F phi - phi| / ||phi||_inf at the sample radii
  double diagonal = 0.0;     // max |F(H phi) - E(k) F phi| / max |E(k) F phi| on the grid
  double tail_norm2 = 0.0;   // estimated L^2 mass beyond k_max (relative)
};
/// Parseval, roundtrip at `samples` radii, and diagonalization of H.
TransformCheck transform_check(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel,
                               const QuadratureSpec& quad = {}, int samples = 50);

}  // namespace lscont
