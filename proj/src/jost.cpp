#include "lscont/jost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lscont/quadrature.hpp"

namespace lscont {

namespace {

constexpr double kSeriesCut = 0.25;  // |w| x^2 below this: power series in w
constexpr double kCancel = 16.0;  // tolerated cancellation in the boundary form

// cos(kappa x), sin(kappa x)/kappa and their w-derivatives by power series.
void series(cplx w, double x, cplx& C, cplx& S, cplx* dC = nullptr, cplx* dS = nullptr) {
  // C = sum z^n/(2n)!, S = x sum z^n/(2n+1)!
  cplx tc = 1.0, ts = x;
  C = tc;
  S = ts;
  cplx dc = 0.0, ds = 0.0;
  cplx wpow = 1.0;  // w^{n-1}
  double fc = 1.0, fs = 1.0;  // (2n)!, (2n+1)!
  double xp_c = 1.0, xp_s = x;  // x^{2n}, x^{2n+1}
  for (int n = 1; n <= 16; ++n) {
    fc *= (2.0 * n - 1.0) * (2.0 * n);
    fs *= (2.0 * n) * (2.0 * n + 1.0);
    xp_c *= x * x;
    xp_s *= x * x;
    const double sgn = (n % 2) ? -1.0 : 1.0;
    const cplx wn = wpow * w;
    C += sgn * wn * xp_c / fc;
    S += sgn * wn * xp_s / fs;
    dc += sgn * double(n) * wpow * xp_c / fc;
    ds += sgn * double(n) * wpow * xp_s / fs;
    wpow = wn;
  }
  if (dC) *dC = dc;
  if (dS) *dS = ds;
}

cplx sinq_over_q(cplx q, double y) { return q == cplx{} ? cplx{y} : std::sin(q * y) / q; }


}  // namespace

void cos_sinc(cplx w, cplx k, double x, cplx& C, cplx& S) {
  if (std::abs(w) * x * x < kSeriesCut) {
    series(w, x, C, S);
  } else {
    C = std::cos(k * x);
    S = std::sin(k * x) / k;
  }
}

namespace {

void cos_sinc_real(double w, double x, double& C, double& S) {
  if (std::abs(w) * x * x < kSeriesCut) {
    cplx c, s;
    series(w, x, c, s);
    C = c.real();
    S = s.real();
  } else if (w > 0.0) {
    const double k = std::sqrt(w);
    C = std::cos(k * x);
    S = std::sin(k * x) / k;
  } else {
    const double k = std::sqrt(-w);
    C = std::cosh(k * x);
    S = std::sinh(k * x) / k;
  }
}

}  // namespace

RealShell::RealShell(const PhysicalConfig& cfg, double k)
    : a_(cfg.a), b_(cfg.b), k_(k), w_(k * k - cfg.barrier_k2()) {
  if (!(k > 0.0)) throw Error(ErrorKind::invalid_argument, "RealShell needs k > 0");
  s_ = std::sin(k * a_);
  c_ = std::cos(k * a_);
  double C, S;
  cos_sinc_real(w_, b_ - a_, C, S);
  u_ = s_ * C + k * c_ * S;
  du_ = -w_ * s_ * S + k * c_ * C;
  jost_ = ShellSolution(cfg, k).jost(Sign::plus);
}

double RealShell::value(double r) const {
  if (r <= a_) return std::sin(k_ * r);
  if (r < b_) {
    double C, S;
    cos_sinc_real(w_, r - a_, C, S);
    return s_ * C + k_ * c_ * S;
  }
  const double y = r - b_;
  return u_ * std::cos(k_ * y) + du_ * std::sin(k_ * y) / k_;
}

ShellSolution::ShellSolution(const PhysicalConfig& cfg, cplx q)
    : ShellSolution(cfg, q, lscont::kappa(cfg, q)) {}

ShellSolution::ShellSolution(const PhysicalConfig& cfg, cplx q, cplx k)
    : cfg_(cfg), q_(q), kappa_(k), w_(q * q - cfg.barrier_k2()) {
  s_ = std::sin(q * cfg.a);
  c_ = std::cos(q * cfg.a);
  cos_sinc(w_, kappa_, cfg.b - cfg.a, C_, S_);
  u_ = s_ * C_ + q_ * c_ * S_;
  du_ = -w_ * s_ * S_ + q_ * c_ * C_;
}

cplx ShellSolution::value(double r) const {
  if (r <= cfg_.a) return std::sin(q_ * r);
  if (r < cfg_.b) {
    cplx C, S;
    cos_sinc(w_, kappa_, r - cfg_.a, C, S);
    return s_ * C + q_ * c_ * S;
  }
  const double y = r - cfg_.b;
  return u_ * std::cos(q_ * y) + du_ * sinq_over_q(q_, y);
}

cplx ShellSolution::derivative(double r) const {
  if (r <= cfg_.a) return q_ * std::cos(q_ * r);
  if (r < cfg_.b) {
    cplx C, S;
    cos_sinc(w_, kappa_, r - cfg_.a, C, S);
    return -w_ * s_ * S + q_ * c_ * C;
  }
  const double y = r - cfg_.b;
  return -u_ * q_ * q_ * sinq_over_q(q_, y) + du_ * std::cos(q_ * y);
}

MatchingCoefficients ShellSolution::coefficients() const {
  if (q_ == cplx{}) throw Error(ErrorKind::degenerate, "regular solution vanishes identically at q = 0");
  MatchingCoefficients m;
  const double a = cfg_.a, b = cfg_.b;
  if (std::abs(kappa_) * (b - a) < 1e-6) {
    m.middle_degenerate = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    m.j1 = m.j2 = {nan, nan};
    m.mid_slope = q_ * c_;
    m.mid_const = s_ - q_ * c_ * a;
  } else {
    // s +- q c/(i kappa) written as exponentials so that neither term cancels;
    // (kappa + q)(kappa - q) = -v, the smaller factor comes from the larger one.
    cplx kp = kappa_ + q_, km = kappa_ - q_;
    if (std::abs(kp) >= std::abs(km)) km = -cfg_.barrier_k2() / kp;
    else kp = -cfg_.barrier_k2() / km;
    const cplx ep = std::exp(kI * q_ * a), em = std::exp(-kI * q_ * a);
    const cplx den = 4.0 * kI * kappa_;
    m.j1 = std::exp(-kI * kappa_ * a) * (ep * kp - em * km) / den;
    m.j2 = std::exp(kI * kappa_ * a) * (ep * km - em * kp) / den;
  }
  const JostPair J = jost();
  m.j3 = -0.5 * kI * J.minus;
  m.j4 = 0.5 * kI * J.plus;
  return m;
}

bool ShellSolution::boundary_form_ok(Sign side, cplx J) const {
  // terms of size |e^{+-iqb}| (|chi'(b)/q| + |chi(b)|) should not cancel to far below that
  const double e = std::exp(-q_.imag() * cfg_.b);
  const double mag = std::abs(du_ / q_) + std::abs(u_);
  return (side == Sign::plus ? e : 1.0 / e) * mag <= kCancel * std::abs(J);
}

cplx ShellSolution::jost(Sign side) const {
  if (q_ == cplx{}) throw Error(ErrorKind::degenerate, "Jost functions need q != 0");
  const cplx e = std::exp(kI * q_ * cfg_.b);
  const cplx p = du_ / q_;
  const cplx J = side == Sign::plus ? e * (p - kI * u_) : (p + kI * u_) / e;
  if (boundary_form_ok(side, J)) return J;
  return wronskian_form(side, false).first;
}

cplx ShellSolution::jost_derivative(Sign side) const {
  const cplx J = jost(side);
  if (!boundary_form_ok(side, J)) return wronskian_form(side, true).second;
  const double a = cfg_.a, b = cfg_.b, d = b - a;
  const cplx q = q_, w = w_, s = s_, c = c_, C = C_, S = S_;
  cplx Cw, Sw;
  if (std::abs(w) * d * d < kSeriesCut) {
    cplx C2, S2;
    series(w, d, C2, S2, &Cw, &Sw);
  } else {
    Cw = -0.5 * d * S;
    Sw = (d * C - S) / (2.0 * w);
  }
  const cplx wq = 2.0 * q;
  const cplx sq = a * c, cq = -a * s;
  const cplx uq = sq * C + s * Cw * wq + (c + q * cq) * S + q * c * Sw * wq;
  const cplx upq = -wq * s * S - w * sq * S - w * s * Sw * wq + (c + q * cq) * C + q * c * Cw * wq;
  const cplx base = upq / q - du_ / (q * q);
  const cplx e = std::exp(kI * q * b);
  if (side == Sign::plus) return kI * b * J + e * (base - kI * uq);
  return -kI * b * J + (base + kI * uq) / e;
}

JostPair ShellSolution::jost() const { return {jost(Sign::plus), jost(Sign::minus)}; }

JostPair ShellSolution::jost_derivative() const {
  return {jost_derivative(Sign::plus), jost_derivative(Sign::minus)};
}

// J+- = 1 + (v/q) int_a^b e^{+-iqr} chi(r) dr (Wronskian with e^{+-iqr} from 0 to b).
// The boundary form cancels badly when J is small compared with
// e^{+-Im q b} |chi(b)|: J- deep in the lower half plane, weak barriers anywhere.
std::pair<cplx, cplx> ShellSolution::wronskian_form(Sign side, bool with_derivative) const {
  const double a = cfg_.a, d = cfg_.b - cfg_.a;
  const double v = cfg_.barrier_k2();
  if (v == 0.0) return {1.0, 0.0};
  const cplx q = q_;
  const double sg = side == Sign::plus ? 1.0 : -1.0;
  const double freq = (std::abs(q) + std::abs(kappa_)) * d + 2.0 * std::abs(q.imag()) * d;
  const int n = std::clamp(int(20 + 1.2 * freq), 20, 400);
  const GaussRule& g = gauss_rule(n);
  cplx ip = 0.0, dip = 0.0;
  const cplx sq = a * c_, cq = -a * s_;
  const cplx wq = 2.0 * q;
  for (int i = 0; i < n; ++i) {
    const double x = 0.5 * d * (g.x[i] + 1.0);
    const double wt = 0.5 * d * g.w[i];
    const double r = a + x;
    cplx C, S, Cw, Sw;
    if (std::abs(w_) * x * x < kSeriesCut) {
      series(w_, x, C, S, &Cw, &Sw);
    } else {
      C = std::cos(kappa_ * x);
      S = std::sin(kappa_ * x) / kappa_;
      Cw = -0.5 * x * S;
      Sw = (x * C - S) / (2.0 * w_);
    }
    const cplx chi = s_ * C + q * c_ * S;
    const cplx ex = std::exp(sg * kI * q * r);
    ip += wt * ex * chi;
    if (with_derivative) {
      const cplx chiq = sq * C + s_ * Cw * wq + (c_ + q * cq) * S + q * c_ * Sw * wq;
      dip += wt * ex * (sg * kI * r * chi + chiq);
    }
  }
  return {1.0 + v / q * ip, -v / (q * q) * ip + v / q * dip};
}

MatchingCoefficients matching_coefficients(const PhysicalConfig& cfg, cplx q) {
  return ShellSolution(cfg, q).coefficients();
}

cplx regular_solution(const PhysicalConfig& cfg, double r, cplx q) {
  if (r < 0.0) throw Error(ErrorKind::invalid_argument, "radius must be non-negative");
  return ShellSolution(cfg, q).value(r);
}

JostPair jost_pm(const PhysicalConfig& cfg, cplx q) { return ShellSolution(cfg, q).jost(); }

JostPair jost_derivative(const PhysicalConfig& cfg, cplx q) {
  return ShellSolution(cfg, q).jost_derivative();
}

cplx s_matrix(const PhysicalConfig& cfg, cplx q) {
  const ShellSolution sol(cfg, q);
  const JostPair J = sol.jost();
  const JostPair dJ = sol.jost_derivative();
  if (J.plus == cplx{} || near_jost_zero(J.plus, dJ.plus))
    throw Error(ErrorKind::at_pole, "S-matrix pole (zero of J+) at q", q);
  return J.minus / J.plus;
}

double lambda_coefficient(const PhysicalConfig& cfg) { return 0.25 * cfg.barrier_k2(); }

cplx lambda_asymptote(const PhysicalConfig& cfg, cplx q) {
  return 1.0 - lambda_coefficient(cfg) * std::exp(2.0 * kI * q * cfg.b) / (q * q);
}

SymmetryReport symmetry_suite(const PhysicalConfig& cfg, cplx q) {
  if (q == cplx{}) throw Error(ErrorKind::degenerate, "symmetry suite needs q != 0");
  SymmetryReport rep;
  auto add = [&rep](const std::string& name, double v) {
    rep.entries.push_back({name, v});
    if (v > rep.max_violation || rep.worst.empty()) {
      rep.max_violation = std::max(rep.max_violation, v);
      rep.worst = name;
    }
  };
  auto rel = [&add](const std::string& name, cplx lhs, cplx rhs, double floor = 1e-300) {
    add(name, rel_diff(lhs, rhs, floor));
  };

  const cplx k0 = kappa(cfg, q);
  const cplx qm = -q, qc = std::conj(q), qmc = -std::conj(q);
  const ShellSolution P(cfg, q, k0);
  const ShellSolution Pm(cfg, qm, -k0);
  const ShellSolution Pc(cfg, qc, std::conj(k0));
  const ShellSolution Pmc(cfg, qmc, -std::conj(k0));

  const double v = cfg.barrier_k2();
  auto branch = [&](const ShellSolution& X) {
    const cplx qq = X.q();
    return std::abs(X.kappa() * X.kappa() - (qq * qq - v)) / std::max({std::norm(qq), std::abs(v), 1.0});
  };
  add("Q(-q) branch", branch(Pm));
  add("Q(conj q) branch", branch(Pc));
  add("Q(-conj q) branch", branch(Pmc));
  rel("conj Q(-conj q) = -Q(q)", std::conj(Pmc.kappa()), -P.kappa());

  const double a = cfg.a;
  rel("conj sin(-conj q a) = -sin(q a)", std::conj(std::sin(qmc * a)), -std::sin(q * a));
  rel("conj cos(-conj q a) = cos(q a)", std::conj(std::cos(qmc * a)), std::cos(q * a));
  rel("conj sin(conj q a) = sin(q a)", std::conj(std::sin(qc * a)), std::sin(q * a));
  rel("conj cos(conj q a) = cos(q a)", std::conj(std::cos(qc * a)), std::cos(q * a));

  const MatchingCoefficients M = P.coefficients(), Mm = Pm.coefficients(),
                             Mc = Pc.coefficients(), Mmc = Pmc.coefficients();
  if (!M.middle_degenerate) {
    rel("conj J1(-conj q) = -J1(q)", std::conj(Mmc.j1), -M.j1);
    rel("conj J2(-conj q) = -J2(q)", std::conj(Mmc.j2), -M.j2);
    rel("J1(-q) = -J2(q)", Mm.j1, -M.j2);
    rel("J2(-q) = -J1(q)", Mm.j2, -M.j1);
    rel("conj J1(conj q) = J2(q)", std::conj(Mc.j1), M.j2);
    rel("conj J2(conj q) = J1(q)", std::conj(Mc.j2), M.j1);
  }
  rel("conj J3(-conj q) = -J3(q)", std::conj(Mmc.j3), -M.j3);
  rel("conj J4(-conj q) = -J4(q)", std::conj(Mmc.j4), -M.j4);
  rel("J3(-q) = -J4(q)", Mm.j3, -M.j4);
  rel("J4(-q) = -J3(q)", Mm.j4, -M.j3);
  rel("conj J3(conj q) = J4(q)", std::conj(Mc.j3), M.j4);
  rel("conj J4(conj q) = J3(q)", std::conj(Mc.j4), M.j3);

  const JostPair J = P.jost(), Jm = Pm.jost(), Jc = Pc.jost(), Jmc = Pmc.jost();
  rel("conj J+(-conj q) = J+(q)", std::conj(Jmc.plus), J.plus);
  rel("conj J-(-conj q) = J-(q)", std::conj(Jmc.minus), J.minus);
  rel("J+(-q) = J-(q)", Jm.plus, J.minus);
  rel("J-(-q) = J+(q)", Jm.minus, J.plus);
  rel("conj J+(conj q) = J-(q)", std::conj(Jc.plus), J.minus);
  rel("conj J-(conj q) = J+(q)", std::conj(Jc.minus), J.plus);

  const double norm = std::sqrt(2.0 / kPi);
  for (double r : {0.5 * cfg.a, 0.5 * (cfg.a + cfg.b), 1.5 * cfg.b}) {
    const double qr = std::abs(q) * r;
    const double floor = 1e-6 * qr / (1.0 + qr) * std::exp(std::abs(q.imag()) * r);
    const std::string at = " @r=" + std::to_string(r);
    const cplx x = P.value(r), xm = Pm.value(r), xc = Pc.value(r), xmc = Pmc.value(r);
    rel("conj chi(-conj q) = -chi(q)" + at, std::conj(xmc), -x, floor);
    rel("chi(-q) = -chi(q)" + at, xm, -x, floor);
    rel("conj chi(conj q) = chi(q)" + at, std::conj(xc), x, floor);

    const cplx xp = norm * x / J.plus, xn = norm * x / J.minus;
    const cplx floor_pm = floor / std::min(std::abs(J.plus), std::abs(J.minus));
    rel("conj chi+(-conj q) = -chi+(q)" + at, std::conj(norm * xmc / Jmc.plus), -xp, std::abs(floor_pm));
    rel("conj chi-(-conj q) = -chi-(q)" + at, std::conj(norm * xmc / Jmc.minus), -xn, std::abs(floor_pm));
    rel("chi+(-q) = -chi-(q)" + at, norm * xm / Jm.plus, -xn, std::abs(floor_pm));
    rel("conj chi+(conj q) = chi-(q)" + at, std::conj(norm * xc / Jc.plus), xn, std::abs(floor_pm));
  }
  return rep;
}

}  // namespace lscont
