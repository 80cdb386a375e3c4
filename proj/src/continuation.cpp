#include "lscont/continuation.hpp"

#include <cmath>

#include "lscont/eigenfunctions.hpp"

namespace lscont {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / kPi);

// J with the at-pole guard; the derivative is only computed when |J| is small
cplx guarded_jost(const ShellSolution& sol, Sign side) {
  const cplx j = sol.jost(side);
  if (std::abs(j) < 1e-3 * jost_scale(sol.q()) && near_jost_zero(j, sol.jost_derivative(side)))
    throw Error(ErrorKind::at_pole, "q is a zero of J" + std::string(to_string(side)) + "; use the residue functional",
                sol.q());
  return j;
}

QuadratureSpec lower_order(const QuadratureSpec& quad) {
  QuadratureSpec low = quad;
  low.order = std::max(4, quad.order - 6);
  return low;
}

// Chebyshev interpolation of samples at the points cos(pi (j + 1/2) / n)
struct Chebyshev {
  std::vector<cplx> c;
  double lo, hi;
  static std::vector<double> nodes(double lo, double hi, int n) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(kPi * (j + 0.5) / n);
    return x;
  }
  Chebyshev(const std::vector<cplx>& f, double lo_, double hi_) : c(f.size()), lo(lo_), hi(hi_) {
    const int n = int(f.size());
    for (int m = 0; m < n; ++m) {
      cplx s = 0.0;
      for (int j = 0; j < n; ++j) s += f[j] * std::cos(kPi * m * (j + 0.5) / n);
      c[m] = (m == 0 ? 1.0 : 2.0) * s / double(n);
    }
    // cut at the start of the rounding plateau (three coefficients in a row
    // below 1e-13 of the largest); off the real axis it would be amplified by rho^m
    double big = 0.0;
    for (const cplx& x : c) big = std::max(big, std::abs(x));
    for (std::size_t m = 0; m + 3 <= c.size(); ++m) {
      if (std::abs(c[m]) < 1e-13 * big && std::abs(c[m + 1]) < 1e-13 * big && std::abs(c[m + 2]) < 1e-13 * big) {
        c.resize(std::max<std::size_t>(m, 1));
        break;
      }
    }
  }
  cplx operator()(cplx z) const {
    const cplx t = (2.0 * z - (lo + hi)) / (hi - lo);
    cplx b1 = 0.0, b2 = 0.0;
    for (int m = int(c.size()) - 1; m >= 1; --m) {
      const cplx b0 = 2.0 * t * b1 - b2 + c[m];
      b2 = b1;
      b1 = b0;
    }
    return t * b1 - b2 + c[0];
  }
};

}  // namespace

const char* to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::bra_plus: return "bra_plus";
    case FunctionalKind::bra_minus: return "bra_minus";
    case FunctionalKind::ket_plus: return "ket_plus";
    case FunctionalKind::ket_minus: return "ket_minus";
    case FunctionalKind::bra_free: return "bra_free";
    case FunctionalKind::ket_free: return "ket_free";
    case FunctionalKind::residue_bra: return "residue_bra";
    case FunctionalKind::residue_ket: return "residue_ket";
  }
  return "?";
}

ContinuedTransform::ContinuedTransform(const PhysicalConfig& cfg, const TestFunction& phi, const QuadratureSpec& quad,
                                       double q_abs_max)
    : cfg_(cfg), phi_(phi), rule_(radial_rule(cfg, phi, quad, std::max(q_abs_max, quad.k_limit(cfg)))) {}

void ContinuedTransform::check_budget(cplx q) const {
  if (phi_.compact()) return;
  const double reach = phi_.gauss_rate() * rule_.tail_r;
  if (std::abs(q.imag()) + 1.0 > reach)
    throw Error(ErrorKind::tail_budget, "e^{|Im q| r} outgrows the Gaussian tail of " + phi_.label() +
                                            " (|Im q| + 1 > c r_max = " + std::to_string(reach) + ")",
                q);
}

cplx ContinuedTransform::regular_integral(cplx q) const {
  check_budget(q);
  const ShellSolution sol(cfg_, q);
  cplx s = 0.0;
  for (std::size_t i = 0; i < rule_.wphi.size(); ++i) s += rule_.wphi[i] * sol.value(rule_.nodes.x[i]);
  return s;
}

cplx ContinuedTransform::free_integral(cplx q) const {
  check_budget(q);
  cplx s = 0.0;
  for (std::size_t i = 0; i < rule_.wphi.size(); ++i) s += rule_.wphi[i] * std::sin(q * rule_.nodes.x[i]);
  return s;
}

cplx ContinuedTransform::bra(cplx q, Sign sign) const {
  if (q == cplx{}) throw Error(ErrorKind::degenerate, "the functionals are not defined at q = 0");
  const ShellSolution sol(cfg_, q);
  const cplx j = guarded_jost(sol, opposite(sign));
  return kSqrt2OverPi * regular_integral(q) / j;
}

cplx ContinuedTransform::ket(cplx q, Sign sign) const {
  if (q == cplx{}) throw Error(ErrorKind::degenerate, "the functionals are not defined at q = 0");
  const ShellSolution sol(cfg_, q);
  const cplx j = guarded_jost(sol, sign);
  return kSqrt2OverPi * regular_integral(q) / j;
}

cplx ContinuedTransform::free_bra(cplx q) const { return kSqrt2OverPi * free_integral(q); }

cplx ContinuedTransform::residue(cplx q0, Sign sign, FunctionalKind kind) const {
  if (kind != FunctionalKind::residue_bra && kind != FunctionalKind::residue_ket)
    throw Error(ErrorKind::invalid_argument, "residue needs kind residue_bra or residue_ket");
  const Sign side = kind == FunctionalKind::residue_bra ? opposite(sign) : sign;
  const ShellSolution sol(cfg_, q0);
  const double scale = jost_scale(q0);
  const cplx j = sol.jost(side), dj = sol.jost_derivative(side);
  if (std::abs(j) > 1e-9 * scale)
    throw Error(ErrorKind::not_a_pole, "J" + std::string(to_string(side)) + " does not vanish at q0", q0);
  if (std::abs(dj) < 1e-8 * scale)
    throw Error(ErrorKind::unsupported_order, "zero of J" + std::string(to_string(side)) + " is not simple", q0);
  return kSqrt2OverPi * regular_integral(q0) / dj;
}

FunctionalValue bra_eval(const PhysicalConfig& cfg, cplx q, const TestFunction& phi, Sign sign,
                         const QuadratureSpec& quad) {
  const double top = std::abs(q.real());
  const cplx v = ContinuedTransform(cfg, phi, quad, top).bra(q, sign);
  const cplx low = ContinuedTransform(cfg, phi, lower_order(quad), top).bra(q, sign);
  return {q, sign == Sign::plus ? FunctionalKind::bra_plus : FunctionalKind::bra_minus, v, std::abs(v - low)};
}

FunctionalValue ket_eval(const PhysicalConfig& cfg, cplx q, const TestFunction& phi, Sign sign,
                         const QuadratureSpec& quad) {
  const double top = std::abs(q.real());
  const cplx v = ContinuedTransform(cfg, phi, quad, top).ket(q, sign);
  const cplx low = ContinuedTransform(cfg, phi, lower_order(quad), top).ket(q, sign);
  return {q, sign == Sign::plus ? FunctionalKind::ket_plus : FunctionalKind::ket_minus, v, std::abs(v - low)};
}

FunctionalValue free_bra_eval(const PhysicalConfig& cfg, cplx q, const TestFunction& phi,
                              const QuadratureSpec& quad) {
  const double top = std::abs(q.real());
  const cplx v = ContinuedTransform(cfg, phi, quad, top).free_bra(q);
  const cplx low = ContinuedTransform(cfg, phi, lower_order(quad), top).free_bra(q);
  return {q, FunctionalKind::bra_free, v, std::abs(v - low)};
}

FunctionalValue free_ket_eval(const PhysicalConfig& cfg, cplx q, const TestFunction& phi,
                              const QuadratureSpec& quad) {
  FunctionalValue f = free_bra_eval(cfg, q, phi, quad);
  f.kind = FunctionalKind::ket_free;
  return f;
}

FunctionalValue residue_eval(const PhysicalConfig& cfg, cplx q0, const TestFunction& phi, Sign sign,
                             FunctionalKind kind, const QuadratureSpec& quad) {
  const double top = std::abs(q0.real());
  const cplx v = ContinuedTransform(cfg, phi, quad, top).residue(q0, sign, kind);
  const cplx low = ContinuedTransform(cfg, phi, lower_order(quad), top).residue(q0, sign, kind);
  return {q0, kind, v, std::abs(v - low)};
}

ComplexDeltaReport complex_delta_check(const PhysicalConfig& cfg, cplx q, const TestFunction& phi, Sign sign,
                                       const QuadratureSpec& quad, int samples) {
  ComplexDeltaReport rep;
  rep.q = q;
  const Sign side = opposite(sign);
  const ContinuedTransform ct(cfg, phi, quad, std::abs(q.real()) + 10.0);
  rep.direct = ct.bra(q, sign);

  // J-+ forward is sqrt(2/pi) int phi chi, odd in k; continue from the right half line
  const bool mirrored = q.real() < 0.0;
  const cplx qs = mirrored ? -q : q;
  const double half = std::max(3.0 / cfg.a, 2.0 * std::abs(q.imag()));
  rep.interval_lo = std::max(0.05 / cfg.a, qs.real() - half);
  rep.interval_hi = rep.interval_lo + 2.0 * half;
  // the samples must resolve e^{ikR} across the interval, R the end of support
  const double reach = std::min(phi.support_end(), quad.r_limit(cfg));
  rep.samples = std::max(samples, int(1.5 * reach * half) + 40);
  const Channel ch = sign == Sign::plus ? Channel::plus : Channel::minus;
  std::vector<cplx> g;
  for (double k : Chebyshev::nodes(rep.interval_lo, rep.interval_hi, rep.samples)) {
    const JostPair j = jost_pm(cfg, k);
    g.push_back(forward(cfg, phi, ch, k, quad) * (side == Sign::plus ? j.plus : j.minus));
  }
  const Chebyshev interp(g, rep.interval_lo, rep.interval_hi);
  rep.continued = (mirrored ? -interp(qs) : interp(qs)) / ShellSolution(cfg, q).jost(side);
  rep.discrepancy = std::abs(rep.direct - rep.continued) / std::abs(rep.direct);
  return rep;
}

ContinuityReport continuity_bound_check(const PhysicalConfig& cfg, cplx q, Sign sign,
                                        const std::vector<TestFunction>& family, FunctionalSide side,
                                        const QuadratureSpec& quad) {
  ContinuityReport rep;
  rep.q = q;
  rep.n = int(std::ceil(std::abs(q)));
  const Sign jside = side == FunctionalSide::ket ? sign : opposite(sign);
  const double jabs = std::abs(ShellSolution(cfg, q).jost(jside));
  for (const TestFunction& phi : family) {
    ContinuityEntry e;
    e.label = phi.label();
    try {
      const double norm = norm_nnprime(cfg, phi, rep.n + 1, 0);
      const ContinuedTransform ct(cfg, phi, quad, std::abs(q.real()));
      const cplx v = side == FunctionalSide::ket ? ct.ket(q, sign) : ct.bra(q, sign);
      e.constant = std::abs(v) * jabs / (std::exp(2.0 * rep.n + 2.0) * norm);
      rep.constant = std::max(rep.constant, e.constant);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::divergent_norm && err.kind() != ErrorKind::tail_budget) throw;
      e.skipped = true;
      e.reason = err.what();
    }
    rep.entries.push_back(e);
  }
  return rep;
}

Prop3Report prop3_bound(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel, int nprime,
                        double alpha, const GrowthGrid& grid, const QuadratureSpec& quad) {
  if (nprime < 0 || !(alpha > 0.0)) throw Error(ErrorKind::invalid_argument, "need n' >= 0 and alpha > 0");
  Prop3Report rep;
  const ContinuedTransform ct(cfg, phi, quad, grid.radius);
  const double R = grid.radius;
  const double im_lo = channel == Channel::minus ? 0.0 : -R;
  const double im_hi = channel == Channel::plus ? 0.0 : R;
  const int n_im = channel == Channel::free ? 2 * grid.n_im - 1 : grid.n_im;
  for (int i = 0; i < grid.n_re; ++i) {
    for (int j = 0; j < n_im; ++j) {
      const cplx q{-R + 2.0 * R * i / (grid.n_re - 1), im_lo + (im_hi - im_lo) * j / (n_im - 1)};
      if (std::abs(q) > R + 1e-12 || q == cplx{}) continue;
      try {
        cplx v = channel == Channel::free ? ct.free_bra(q)
                                          : ct.bra(q, channel == Channel::plus ? Sign::plus : Sign::minus);
        for (int p = 0; p < nprime; ++p) v *= 1.0 + cfg.h2m() * q * q;
        const double damped = std::abs(v) * std::exp(-q.imag() * q.imag() / (2.0 * alpha));
        ++rep.points;
        if (damped > rep.sup) {
          rep.sup = damped;
          rep.argmax = q;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::at_pole && e.kind() != ErrorKind::tail_budget) throw;
        ++rep.skipped;
      }
    }
  }
  return rep;
}

}  // namespace lscont
