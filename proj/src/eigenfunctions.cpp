#include "lscont/eigenfunctions.hpp"

#include <cmath>

namespace lscont {

namespace {
const double kNorm = std::sqrt(2.0 / kPi);
}

LSEigenfunction::LSEigenfunction(const PhysicalConfig& cfg, cplx q, Sign sign) : sol_(cfg, q) {
  if (q == cplx{}) throw Error(ErrorKind::degenerate, "chi+- undefined at q = 0");
  jost_ = sol_.jost(sign);
  const cplx dj = sol_.jost_derivative(sign);
  if (jost_ == cplx{} || near_jost_zero(jost_, dj))
    throw Error(ErrorKind::at_pole,
                std::string("q is at a zero of J") + to_string(sign) + "; use residue_chi_pm", q);
  factor_ = kNorm / jost_;
}

cplx chi_pm(const PhysicalConfig& cfg, double r, cplx q, Sign sign) {
  return LSEigenfunction(cfg, q, sign)(r);
}

cplx chi_zero(double r, cplx q) { return kNorm * std::sin(q * r); }

cplx residue_chi_pm(const PhysicalConfig& cfg, double r, cplx q0, Sign sign) {
  if (q0 == cplx{}) throw Error(ErrorKind::not_a_pole, "q = 0 is not a Jost zero");
  const ShellSolution sol(cfg, q0);
  const double scale = jost_scale(q0);
  const cplx j = sol.jost(sign);
  if (std::abs(j) > 1e-9 * scale)
    throw Error(ErrorKind::not_a_pole, "J" + std::string(to_string(sign)) + " does not vanish at q0");
  const cplx dj = sol.jost_derivative(sign);
  if (std::abs(dj) < 1e-8 * scale)
    throw Error(ErrorKind::unsupported_order, "J' vanishes too: zero of order > 1");
  return kNorm * sol.value(r) / dj;
}

GrowthReport growth_bound_check(const PhysicalConfig& cfg, const GrowthRegion& g, double pole_margin) {
  GrowthReport rep;
  for (int i = 0; i < g.n_re; ++i) {
    for (int j = 0; j < g.n_im; ++j) {
      const double re = g.n_re > 1 ? g.re_min + (g.re_max - g.re_min) * i / (g.n_re - 1) : g.re_min;
      const double im = g.n_im > 1 ? g.im_min + (g.im_max - g.im_min) * j / (g.n_im - 1) : g.im_min;
      const cplx q{re, im};
      if (q == cplx{}) continue;
      const ShellSolution sol(cfg, q);
      const cplx jp = sol.jost(Sign::plus), jm = sol.jost(Sign::minus);
      const bool ok_p = std::abs(jp) > pole_margin * std::abs(sol.jost_derivative(Sign::plus));
      const bool ok_m = std::abs(jm) > pole_margin * std::abs(sol.jost_derivative(Sign::minus));
      if (!ok_p || !ok_m) ++rep.skipped_near_poles;
      for (double r : g.radii) {
        if (r <= 0.0) continue;
        const double qr = std::abs(q) * r;
        const double bound = qr / (1.0 + qr) * std::exp(std::abs(im) * r);
        const double ratio = std::abs(sol.value(r)) / bound;
        ++rep.points;
        if (ratio > rep.sup_chi) {
          rep.sup_chi = ratio;
          rep.argmax_q = q;
          rep.argmax_r = r;
        }
        if (ok_p) rep.sup_plus = std::max(rep.sup_plus, kNorm * ratio / std::abs(jp));
        if (ok_m) rep.sup_minus = std::max(rep.sup_minus, kNorm * ratio / std::abs(jm));
      }
    }
  }
  rep.finite = std::isfinite(rep.sup_chi) && std::isfinite(rep.sup_plus) && std::isfinite(rep.sup_minus);
  return rep;
}

}  // namespace lscont
