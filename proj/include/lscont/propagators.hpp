#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lscont/transforms.hpp"

namespace lscont {

/// Wave function on a radial grid at time t.
struct RadialField {
  std::vector<double> grid;
  std::vector<cplx> values;
  double t = 0.0;
  double tail_bound = 0.0;  // pointwise estimate of the discarded end of the k (or q) integral
};

/// Trapezoid L^2 norm on the field's own grid.
double l2_norm(const RadialField& f);
/// ||a - b|| / ||b||; the grids must coincide.
double relative_l2_difference(const RadialField& a, const RadialField& b);

/// Path of a contour evolution. Angles are measured from the positive real
/// axis; negative angles point into the fourth quadrant.
struct ContourSpec {
  enum class Kind { real_axis, radial_ray, bent_ray };
  Kind kind = Kind::bent_ray;
  double angle = -0.2;
  double s_max = 0.0;  // end of the path; 0 means the k_max of the quadrature
  std::vector<cplx> bend;  // explicit vertices (0 first); planned automatically when empty
};
const char* to_string(ContourSpec::Kind k);

/// A planned path: piecewise linear from 0, plus the poles it was steered
/// around and the number of Jost zeros it sweeps over (0 for a valid deformation).
struct PlannedContour {
  std::vector<cplx> vertices;
  std::vector<cplx> poles;
  int enclosed = 0;
  bool closed = true;  // ends on the real axis at s_max; otherwise stops where the integrand is negligible
};

struct EvolutionOptions {
  double eps = 0.2;
  bool allow_bend = true;
  /// Zeros of J+ in the fourth quadrant to steer around. Found automatically
  /// (up to depth 2.5/a) when empty and V0 != 0.
  std::vector<cplx> poles;
  bool poles_given = false;
};

/// phi(r;t) = int_0^inf e^{-i E(k) t} F_channel(phi)(k) chi_channel(r;k) dk, any real t.
RadialField group_evolve(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel, double t,
                         const std::vector<double>& rgrid, const QuadratureSpec& quad = {});

/// Group evolution of a spectral representation already on its grid.
RadialField group_evolve(const PhysicalConfig& cfg, const SpectralFunction& f, Channel channel, double t,
                         const std::vector<double>& rgrid);

/// int over the rotated contour of e^{-i E(q) t} phi^(q) chi(r;q) dq; t > 0 only.
RadialField retarded_evolve(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign, double t,
                            const std::vector<double>& rgrid, const QuadratureSpec& quad = {},
                            const EvolutionOptions& opt = {});
/// -int over the mirrored contour of e^{-i E(q) t} conj(phi^(conj q)) conj(chi(r; conj q)) dq; t < 0 only.
RadialField advanced_evolve(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign, double t,
                            const std::vector<double>& rgrid, const QuadratureSpec& quad = {},
                            const EvolutionOptions& opt = {});
RadialField free_retarded_evolve(const PhysicalConfig& cfg, const TestFunction& phi, double t,
                                 const std::vector<double>& rgrid, const QuadratureSpec& quad = {},
                                 double eps = 0.2);
RadialField free_advanced_evolve(const PhysicalConfig& cfg, const TestFunction& phi, double t,
                                 const std::vector<double>& rgrid, const QuadratureSpec& quad = {},
                                 double eps = 0.2);

/// Path for an evolution at time t: a ray at spec.angle, or (bent_ray) a
/// polyline that stays above the listed poles by min(0.05, depth/2), keeps
/// e^{|Im q|(r_reach - 2 h2m Re q t)} below e^3, and either stops once that
/// exponent falls under -40 or returns to the real axis at s_max. Throws
/// pole_in_sector when the path sweeps over a zero of the relevant Jost function.
PlannedContour plan_contour(const PhysicalConfig& cfg, const ContourSpec& spec, double t, double r_reach,
                            const std::vector<cplx>& poles, double s_max, double depth_cap = 1e300);

enum class Quadrant { first = 1, second, third, fourth };
enum class ArcBehavior { decays, blows_up };
const char* to_string(ArcBehavior b);

struct QuadrantLimit {
  ArcBehavior behavior;
  double log_magnitude[3];  // log |e^{-i q^2 t}| at |q| = 10, 20, 40
  bool matches_rule = false;  // agrees with: decays iff t sin(2 theta) < 0
};
/// Behaviour of e^{-i q^2 t} as |q| -> inf along the direction `angle`.
/// Throws ill_defined on the axes or for t = 0.
QuadrantLimit quadrant_limit(double angle, double t);
QuadrantLimit quadrant_limit(Quadrant quadrant, double t);

struct ContourEquivalence {
  bool refused = false;
  std::string reason;
  double difference = 0.0;  // relative L^2 difference of the two fields
  double alpha_min = 0.0;   // smallest Gaussian weight that beats the exponential growth: m tan|theta| / (2 hbar |t|)
  int enclosed_a = 0, enclosed_b = 0;
};
/// Evaluates the evolution integral along both contours and compares them.
/// Refuses (without computing) when the closing arc grows for this t, or the
/// contours sit on different sides of the real axis.
ContourEquivalence contour_equivalence_check(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign,
                                             double t, const ContourSpec& a, const ContourSpec& b,
                                             const std::vector<double>& rgrid, const QuadratureSpec& quad = {},
                                             const EvolutionOptions& opt = {});

enum class BraKet { ket, bra };
struct FormalEvolution {
  cplx multiplier;
  bool valid = false;
  std::string note;
};
/// e^{-i E(q) t} for kets and e^{+i E(q) t} for bras, with the flag telling
/// whether the multiplier decays along the direction of q as |q| -> inf.
/// Real q is always valid.
FormalEvolution formal_braket_evolution(const PhysicalConfig& cfg, cplx q, double t, BraKet kind);

}  // namespace lscont
