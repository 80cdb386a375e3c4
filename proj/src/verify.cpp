#include "lscont/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "lscont/continuation.hpp"
#include "lscont/eigenfunctions.hpp"
#include "lscont/jost.hpp"
#include "lscont/poles.hpp"
#include "lscont/propagators.hpp"
#include "lscont/testspace.hpp"
#include "lscont/young.hpp"

namespace lscont {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool VerificationReport::passed() const { return count(CheckStatus::fail) == 0; }

int VerificationReport::count(CheckStatus s) const {
  return int(std::count_if(entries.begin(), entries.end(), [s](const CheckEntry& e) { return e.status == s; }));
}

const CheckEntry* VerificationReport::find(const std::string& id) const {
  for (const CheckEntry& e : entries)
    if (e.check_id == id) return &e;
  return nullptr;
}

namespace {

struct Outcome {
  double metric = 0.0;
  std::string note;
  bool skipped = false;
};

struct Context {
  PhysicalConfig cfg;
  std::uint64_t seed;
  QuadratureSpec quad;
};

using Entries = std::vector<CheckEntry>;

// Runs one check; exceptions become failures with the message as note.
void record(Entries& out, std::string id, std::string anchor, double tol, const std::function<Outcome()>& fn) {
  CheckEntry e;
  e.check_id = std::move(id);
  e.anchor = std::move(anchor);
  e.tolerance = tol;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = fn();
    e.metric = o.metric;
    e.note = o.note;
    if (o.skipped)
      e.status = CheckStatus::skipped;
    else
      e.status = (std::isfinite(o.metric) && o.metric <= tol) ? CheckStatus::pass : CheckStatus::fail;
  } catch (const std::exception& ex) {
    e.metric = std::nan("");
    e.status = CheckStatus::fail;
    e.note = std::string("error: ") + ex.what();
  }
  e.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.push_back(std::move(e));
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

std::string fmt(cplx q) { return fmt(q.real()) + (q.imag() < 0 ? "" : "+") + fmt(q.imag()) + "i"; }

std::vector<cplx> random_q(std::uint64_t seed, int n, double re, double im_lo, double im_hi) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ur(-re, re), ui(im_lo, im_hi);
  std::vector<cplx> q;
  for (int i = 0; i < n; ++i) {
    const double x = ur(gen);
    q.emplace_back(x, ui(gen));
  }
  return q;
}

// A zero of J+- within Newton distance `margin`.
bool near_pole(const PhysicalConfig& cfg, cplx q, double margin) {
  if (cfg.v0 == 0.0) return false;
  const ShellSolution s(cfg, q);
  const JostPair J = s.jost(), dJ = s.jost_derivative();
  return std::abs(J.plus) < margin * std::abs(dJ.plus) || std::abs(J.minus) < margin * std::abs(dJ.minus);
}

std::vector<double> radial_grid(double lo, double hi, double step) {
  std::vector<double> r;
  for (int i = 0; lo + i * step <= hi + 1e-12; ++i) r.push_back(lo + i * step);
  return r;
}

// ---------------------------------------------------------------- suites

Entries suite_free(const Context& c) {
  Entries out;
  PhysicalConfig f = c.cfg;
  f.v0 = 0.0;
  std::vector<cplx> grid;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j) {
      const cplx q{-10.0 + 0.5 * i, -10.0 + 0.5 * j};
      if (q != 0.0) grid.push_back(q);
    }
  record(out, "free.jost_limit", "tends uniformly to 1", 1e-12, [&] {
    double m = 0.0;
    for (cplx q : grid) {
      const JostPair J = jost_pm(f, q);
      m = std::max({m, std::abs(J.plus - 1.0), std::abs(J.minus - 1.0)});
    }
    return Outcome{m, "max |J+- - 1| over 41x41 points, |Re q|, |Im q| <= 10"};
  });
  record(out, "free.chi_collapse", "chi+- reduce to chi0 without potential", 1e-12, [&] {
    double m = 0.0;
    for (cplx q : grid)
      for (double r : {0.25 * f.a, 0.5 * f.a, f.a, 0.5 * (f.a + f.b), f.b, 2.0 * f.b}) {
        const cplx z = chi_zero(r, q);
        for (Sign s : {Sign::plus, Sign::minus})
          m = std::max(m, std::abs(chi_pm(f, r, q, s) - z) / std::max(1.0, std::abs(z)));
      }
    return Outcome{m, "max |chi+- - chi0| / max(1, |chi0|) at 6 radii"};
  });
  return out;
}

Entries suite_symmetry(const Context& c) {
  Entries out;
  record(out, "symmetry.identities", "J+(-q) = J-(q)", 1e-11, [&] {
    double m = 0.0;
    std::string worst;
    int skipped = 0;
    for (cplx q : random_q(c.seed, 100, 10.0, -10.0, 10.0)) {
      if (near_pole(c.cfg, q, 1e-8)) {
        ++skipped;
        continue;
      }
      const SymmetryReport r = symmetry_suite(c.cfg, q);
      if (r.max_violation > m) {
        m = r.max_violation;
        worst = r.worst + " at q = " + fmt(q);
      }
    }
    return Outcome{m, "100 seeded q; worst: " + worst + "; skipped near zeros: " + std::to_string(skipped)};
  });
  return out;
}

Entries suite_smatrix(const Context& c) {
  Entries out;
  record(out, "smatrix.unitarity", "|S(k)| = 1 on the real axis", 1e-10, [&] {
    double m = 0.0;
    for (int i = 1; i <= 40; ++i) m = std::max(m, std::abs(std::abs(s_matrix(c.cfg, 0.5 * i)) - 1.0));
    return Outcome{m, "max ||S(k)| - 1| at k = 0.5, 1, ..., 20"};
  });
  return out;
}

Entries suite_prop1(const Context& c) {
  Entries out;
  const Rect rect{0.1, 10.0, 0.1, 5.0};
  record(out, "prop1.no_upper_zeros", "no zeros in the upper half plane", 0.0, [&] {
    const int n = count_zeros(c.cfg, rect, Sign::plus);
    return Outcome{double(n), "argument-principle count of J+ zeros in [0.1,10]x[0.1,5]"};
  });
  record(out, "prop1.inverse_jost_sup", "bounded in the upper half", 0.05, [&] {
    std::vector<double> sups;
    for (int n : {40, 80, 160}) {
      double s = 0.0;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n / 2; ++j) {
          const cplx q{rect.re_min + (rect.re_max - rect.re_min) * i / n,
                       rect.im_min + (rect.im_max - rect.im_min) * j / (n / 2)};
          s = std::max(s, 1.0 / std::abs(ShellSolution(c.cfg, q).jost(Sign::plus)));
        }
      sups.push_back(s);
    }
    const double d1 = std::abs(sups[1] - sups[0]) / sups[1], d2 = std::abs(sups[2] - sups[1]) / sups[2];
    return Outcome{std::max(d1, d2), "sup 1/|J+| on 41x21, 81x41, 161x81 grids: " + fmt(sups[0]) + ", " +
                                         fmt(sups[1]) + ", " + fmt(sups[2]) + "; metric is the largest relative change"};
  });
  return out;
}

Entries suite_poles(const Context& c) {
  Entries out;
  const Rect rect{0.1, 10.0, -3.0, -0.01};
  std::optional<PoleSet> zp;
  auto zeros = [&]() -> const PoleSet& {
    if (!zp) zp = find_resonances(c.cfg, rect, Sign::plus);
    return *zp;
  };
  record(out, "poles.count_match", "argument principle agrees with the refined zeros", 0.0, [&] {
    const int n = count_zeros(c.cfg, rect, Sign::plus);
    const int found = int(zeros().zeros.size());
    return Outcome{double(std::abs(n - found)),
                   "winding count " + std::to_string(n) + ", Newton-refined " + std::to_string(found)};
  });
  record(out, "poles.residuals", "zeros of J+", 1e-10, [&] {
    double m = 0.0;
    for (const JostZero& z : zeros().zeros) m = std::max(m, z.jost_residual / jost_scale(z.q0));
    return Outcome{m, "max |J+(q0)| / max(1, |q0|^2) over " + std::to_string(zeros().zeros.size()) + " zeros"};
  });
  // the zero sets are sorted by Re, so mirror images come in reverse order
  auto compare = [&](const Rect& r, Sign s, auto image) {
    const PoleSet other = find_resonances(c.cfg, r, s);
    const auto& z = zeros().zeros;
    if (other.zeros.size() != z.size())
      return Outcome{std::numeric_limits<double>::infinity(),
                     "sizes differ: " + std::to_string(z.size()) + " vs " + std::to_string(other.zeros.size())};
    double m = 0.0;
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(other.zeros[n - 1 - i].q0 - image(z[i].q0)));
    return Outcome{m, std::to_string(n) + " zeros compared"};
  };
  record(out, "poles.reflection", "Z+ is symmetric under q -> -conj(q)", 1e-8, [&] {
    return compare({-10.0, -0.1, -3.0, -0.01}, Sign::plus, [](cplx q) { return -std::conj(q); });
  });
  record(out, "poles.minus_set", "Z- = -Z+", 1e-8, [&] {
    return compare({-10.0, -0.1, 0.01, 3.0}, Sign::minus, [](cplx q) { return -q; });
  });
  return out;
}

Entries suite_transforms(const Context& c) {
  Entries out;
  const std::vector<TestFunction> fam = standard_family(c.cfg);
  for (Channel ch : {Channel::plus, Channel::minus, Channel::free}) {
    const std::string pre = std::string("transforms.") + to_string(ch) + ".";
    std::vector<TransformCheck> res;
    record(out, pre + "parseval", "unitary operators from", 1e-6, [&] {
      double m = 0.0;
      for (const TestFunction& phi : fam) {
        res.push_back(transform_check(c.cfg, phi, ch, c.quad));
        m = std::max(m, res.back().parseval);
      }
      return Outcome{m, "max over " + std::to_string(fam.size()) + " test functions"};
    });
    auto from = [&](double TransformCheck::*field) {
      if (res.size() != fam.size()) throw Error(ErrorKind::non_convergence, "transform checks did not complete");
      double m = 0.0;
      for (const TransformCheck& t : res) m = std::max(m, t.*field);
      return Outcome{m, "max over " + std::to_string(fam.size()) + " test functions"};
    };
    record(out, pre + "roundtrip", "unitary operators from", 1e-6, [&] { return from(&TransformCheck::roundtrip); });
    record(out, pre + "diagonal", "acts as multiplication by", 1e-6, [&] { return from(&TransformCheck::diagonal); });
  }
  return out;
}

Entries suite_moller(const Context& c) {
  Entries out;
  const std::vector<TestFunction> fam = standard_family(c.cfg);
  std::vector<MollerCheck> res;
  record(out, "moller.isometry", "The Moller operators", 1e-6, [&] {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
      for (Sign s : {Sign::plus, Sign::minus}) {
        res.push_back(moller_check(c.cfg, fam[i], s, c.quad));
        m = std::max(m, res.back().isometry);
      }
    return Outcome{m, "2 compact bumps, both signs"};
  });
  record(out, "moller.intertwining", "The Moller operators", 1e-5, [&] {
    if (res.size() != 4) throw Error(ErrorKind::non_convergence, "Moller checks did not complete");
    double m = 0.0;
    for (const MollerCheck& r : res) m = std::max(m, r.intertwining);
    return Outcome{m, "||H Omega phi - Omega H0 phi|| / ||phi||, 2 bumps, both signs"};
  });
  return out;
}

Entries suite_prop2(const Context& c) {
  Entries out;
  const std::vector<TestFunction> fam = standard_family(c.cfg);
  const std::vector<TestFunction> phis{fam[0], fam[3]};
  std::vector<cplx> qs;
  for (cplx q : random_q(c.seed + 1, 200, 6.0, -3.0, 3.0)) {
    if (qs.size() == 20) break;
    if (!near_pole(c.cfg, q, 0.05)) qs.push_back(q);
  }
  auto residual = [&](bool ket) {
    double m = 0.0;
    int skipped = 0;
    for (const TestFunction& phi : phis) {
      const ContinuedTransform c0(c.cfg, phi, c.quad), c1(c.cfg, phi.apply_H(c.cfg), c.quad);
      for (cplx q : qs)
        for (Sign s : {Sign::plus, Sign::minus}) {
          try {
            c0.check_budget(q);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::tail_budget) throw;
            ++skipped;
            continue;
          }
          const cplx e = c.cfg.h2m() * q * q;
          const cplx v0 = ket ? c0.ket(q, s) : c0.bra(q, s), v1 = ket ? c1.ket(q, s) : c1.bra(q, s);
          m = std::max(m, std::abs(v1 - e * v0) / std::abs(e * v0));
        }
    }
    return Outcome{m, "20 seeded pole-free q, 2 test functions, both signs; skipped for the tail budget: " +
                          std::to_string(skipped)};
  };
  record(out, "prop2.ket_eigen", "right eigenvectors of H", 1e-8, [&] { return residual(true); });
  record(out, "prop2.bra_eigen", "left eigenvectors of H", 1e-8, [&] { return residual(false); });
  return out;
}

Entries suite_prop3(const Context& c) {
  Entries out;
  const TestFunction phi = standard_family(c.cfg)[0];
  GrowthGrid coarse;
  coarse.radius = 8.0;
  coarse.n_re = 17;
  coarse.n_im = 9;
  GrowthGrid fine = coarse;
  fine.n_re = 33;
  fine.n_im = 17;
  for (Channel ch : {Channel::plus, Channel::minus})
    for (int np : {0, 1, 2}) {
      const std::string id = std::string("prop3.") + to_string(ch) + ".np" + std::to_string(np);
      record(out, id, "grows slower than", 0.1, [&] {
        const Prop3Report a = prop3_bound(c.cfg, phi, ch, np, 1.0, coarse, c.quad);
        const Prop3Report b = prop3_bound(c.cfg, phi, ch, np, 1.0, fine, c.quad);
        if (!std::isfinite(a.sup) || !std::isfinite(b.sup))
          return Outcome{std::numeric_limits<double>::infinity(), "supremum not finite"};
        return Outcome{std::abs(a.sup - b.sup) / b.sup,
                       "sup " + fmt(a.sup) + " -> " + fmt(b.sup) + " under refinement (" +
                           (ch == Channel::plus ? "lower" : "upper") + " half disc |q| <= 8, alpha = 1); skipped " +
                           std::to_string(b.skipped)};
      });
    }
  return out;
}

cplx residue_limit(const std::function<cplx(cplx)>& f, cplx q0, double h) {
  const cplx dir = std::polar(1.0, 0.7);
  auto g = [&](double s) { return s * dir * f(q0 + s * dir); };
  const cplx r1 = 2.0 * g(h / 2) - g(h), r2 = 2.0 * g(h / 4) - g(h / 2);
  return (4.0 * r2 - r1) / 3.0;
}

Entries suite_residues(const Context& c) {
  Entries out;
  std::optional<std::vector<cplx>> lowest;
  auto poles = [&]() -> const std::vector<cplx>& {
    if (!lowest) {
      std::vector<cplx> z;
      for (const JostZero& j : find_resonances(c.cfg, {0.1, 10.0, -3.0, -0.001}, Sign::plus).zeros)
        z.push_back(j.q0);
      std::sort(z.begin(), z.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
      if (z.size() > 2) z.resize(2);
      lowest = z;
    }
    return *lowest;
  };
  record(out, "residues.chi_limit", "by their residues at the pole", 1e-7, [&] {
    double m = 0.0;
    for (cplx q0 : poles())
      for (double r : {0.25 * c.cfg.b, 0.75 * c.cfg.b, 1.5 * c.cfg.b}) {
        const cplx res = residue_chi_pm(c.cfg, r, q0, Sign::plus);
        const cplx lim = residue_limit([&](cplx q) { return chi_pm(c.cfg, r, q, Sign::plus); }, q0, 2e-4);
        m = std::max(m, rel_diff(res, lim));
      }
    return Outcome{m, poles().empty() ? "no resonances: nothing to check"
                                      : std::to_string(poles().size()) + " lowest resonances, 3 radii"};
  });
  record(out, "residues.functional", "by their residues at the pole", 1e-7, [&] {
    const TestFunction phi = standard_family(c.cfg)[0];
    const ContinuedTransform ct(c.cfg, phi, c.quad);
    double m = 0.0;
    for (cplx zp : poles()) {
      // the plus bra has its poles at Z- = -Z+, the plus ket at Z+
      const cplx rb = residue_eval(c.cfg, -zp, phi, Sign::plus, FunctionalKind::residue_bra, c.quad).value;
      const cplx lb = residue_limit([&](cplx q) { return ct.bra(q, Sign::plus); }, -zp, 4e-4);
      const cplx rk = residue_eval(c.cfg, zp, phi, Sign::plus, FunctionalKind::residue_ket, c.quad).value;
      const cplx lk = residue_limit([&](cplx q) { return ct.ket(q, Sign::plus); }, zp, 4e-4);
      m = std::max({m, rel_diff(rb, lb), rel_diff(rk, lk)});
    }
    return Outcome{m, poles().empty() ? "no resonances: nothing to check" : "bra and ket residues"};
  });
  return out;
}

Entries suite_delta(const Context& c) {
  Entries out;
  const TestFunction phi = standard_family(c.cfg)[1];
  for (auto [name, q, s] : {std::tuple{"delta.lower", cplx{2.0, -0.5}, Sign::plus},
                            std::tuple{"delta.upper", cplx{4.5, 0.8}, Sign::minus}}) {
    record(out, name, "complex delta functional", 1e-6, [&, q = q, s = s] {
      const ComplexDeltaReport r = complex_delta_check(c.cfg, q, phi, s, c.quad);
      return Outcome{r.discrepancy, "direct vs continued from the real axis at q = " + fmt(q)};
    });
  }
  return out;
}

Entries suite_bounds(const Context& c) {
  Entries out;
  record(out, "bounds.chi_growth", "|chi(r;q)| <= C (|q|r/(1+|q|r)) e^{|Im q| r}", 0.1, [&] {
    GrowthRegion g;
    g.re_min = 0.05;
    g.re_max = 10.0;
    g.im_min = -10.0;
    g.im_max = 10.0;
    for (int i = 1; i <= 20; ++i) g.radii.push_back(0.25 * i * c.cfg.b);
    g.n_re = g.n_im = 49;
    const GrowthReport a = growth_bound_check(c.cfg, g);
    g.n_re = g.n_im = 97;
    const GrowthReport b = growth_bound_check(c.cfg, g);
    if (!a.finite || !b.finite) return Outcome{std::numeric_limits<double>::infinity(), "supremum not finite"};
    return Outcome{std::abs(a.sup_chi - b.sup_chi) / b.sup_chi,
                   "C = " + fmt(b.sup_chi) + " at q = " + fmt(b.argmax_q) + ", r = " + fmt(b.argmax_r) + " (was " +
                       fmt(a.sup_chi) + " on the coarser grid)"};
  });
  return out;
}

Entries suite_prop4(const Context& c) {
  Entries out;
  const TestFunction phi = standard_family(c.cfg)[0];
  const std::vector<double> rgrid = radial_grid(0.025 * c.cfg.b, 5.0 * c.cfg.b, 0.025 * c.cfg.b);
  for (double t : {0.1, 0.5, 1.0}) {
    std::optional<RadialField> gp, gm;
    for (double eps : {0.1, 0.2}) {
      EvolutionOptions opt;
      opt.eps = eps;
      const std::string tag = ".eps=" + fmt(eps);
      record(out, "prop4.retarded.t=" + fmt(t) + tag, "is well defined and coincides", 1e-6, [&] {
        if (!gp) gp = group_evolve(c.cfg, phi, Channel::plus, t, rgrid, c.quad);
        return Outcome{relative_l2_difference(retarded_evolve(c.cfg, phi, Sign::plus, t, rgrid, c.quad, opt), *gp),
                       "relative L2 difference to group evolution"};
      });
      record(out, "prop4.advanced.t=" + fmt(-t) + tag, "is well defined and coincides", 1e-6, [&] {
        if (!gm) gm = group_evolve(c.cfg, phi, Channel::plus, -t, rgrid, c.quad);
        return Outcome{relative_l2_difference(advanced_evolve(c.cfg, phi, Sign::plus, -t, rgrid, c.quad, opt), *gm),
                       "relative L2 difference to group evolution"};
      });
    }
  }
  record(out, "prop4.wrong_sign_refused", "for eps > 0 and t > 0", 0.0, [&] {
    int accepted = 0;
    std::string msg;
    auto probe = [&](auto&& f) {
      try {
        f();
        ++accepted;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::domain) ++accepted;
        if (msg.empty()) msg = e.what();
      }
    };
    probe([&] { retarded_evolve(c.cfg, phi, Sign::plus, -1.0, rgrid, c.quad); });
    probe([&] { advanced_evolve(c.cfg, phi, Sign::plus, 1.0, rgrid, c.quad); });
    probe([&] { free_retarded_evolve(c.cfg, phi, -1.0, rgrid, c.quad); });
    probe([&] { free_advanced_evolve(c.cfg, phi, 1.0, rgrid, c.quad); });
    return Outcome{double(accepted), "wrong-sign evaluations not refused (of 4); e.g. \"" + msg + "\""};
  });
  record(out, "prop4.equivalence.axis_vs_bent", "is well defined and coincides", 1e-6, [&] {
    ContourSpec axis, bent;
    axis.kind = ContourSpec::Kind::real_axis;
    bent.kind = ContourSpec::Kind::bent_ray;
    bent.angle = -0.2;
    const ContourEquivalence e = contour_equivalence_check(c.cfg, phi, Sign::plus, 0.5, axis, bent, rgrid, c.quad);
    if (e.refused) return Outcome{std::numeric_limits<double>::infinity(), "refused: " + e.reason};
    return Outcome{e.difference, "t = 0.5, real axis against the bent path at angle -0.2"};
  });
  return out;
}

Entries suite_quadrant(const Context&) {
  Entries out;
  for (Quadrant qd : {Quadrant::first, Quadrant::second, Quadrant::third, Quadrant::fourth})
    for (double t : {1.0, -1.0}) {
      const std::string id = "quadrant.q" + std::to_string(int(qd)) + (t > 0 ? ".t+" : ".t-");
      record(out, id, "limit of e^{-iq^2 t} along rays", 0.0, [&] {
        const QuadrantLimit l = quadrant_limit(qd, t);
        return Outcome{l.matches_rule ? 0.0 : 1.0,
                       std::string(to_string(l.behavior)) + "; log|e^{-iq^2t}| at |q| = 10, 20, 40: " +
                           fmt(l.log_magnitude[0]) + ", " + fmt(l.log_magnitude[1]) + ", " + fmt(l.log_magnitude[2])};
      });
    }
  return out;
}

Entries suite_norms(const Context& c) {
  Entries out;
  const std::vector<TestFunction> fam = standard_family(c.cfg);
  for (int n : {1, 2, 3}) {
    record(out, "norms.n" + std::to_string(n), "||H phi||_{n,n'} <= ||phi||_{n,n'+1} + ||phi||_{n,n'}", 1.0, [&] {
      double m = 0.0;
      int used = 0;
      for (const TestFunction& f : fam) {
        if (!f.compact() && 2.0 * f.gauss_rate() <= n + 0.5) continue;
        ++used;
        const TestFunction hf = f.apply_H(c.cfg);
        for (int np : {0, 1}) {
          const double lhs = norm_nnprime(c.cfg, hf, n, np);
          const double rhs = norm_nnprime(c.cfg, f, n, np + 1) + norm_nnprime(c.cfg, f, n, np);
          m = std::max(m, lhs / rhs);
        }
      }
      return Outcome{m, "max lhs/rhs over n' = 0, 1 and " + std::to_string(used) + " test functions with enough tail"};
    });
  }
  return out;
}

Entries suite_young(const Context& c) {
  Entries out;
  for (auto [name, sweep] : {std::pair{"power", &young_power_sweep}, std::pair{"scaled", &young_scaled_sweep}}) {
    std::optional<YoungSweep> s;
    record(out, std::string("young.") + name + ".violations", "dual in the sense of Young", 0.0, [&] {
      s = sweep(10000, c.seed);
      return Outcome{double(s->violations), "10000 seeded samples; worst relative violation " + fmt(s->worst)};
    });
    record(out, std::string("young.") + name + ".equality", "dual in the sense of Young", 0.0, [&] {
      if (!s) throw Error(ErrorKind::non_convergence, "sweep did not complete");
      return Outcome{double(s->equality_samples - s->equality_detected),
                     std::to_string(s->equality_detected) + " of " + std::to_string(s->equality_samples) +
                         " equality samples detected"};
    });
  }
  return out;
}

using Suite = Entries (*)(const Context&);

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> m{
      {"bounds", suite_bounds},     {"delta", suite_delta},     {"free", suite_free},
      {"moller", suite_moller},     {"norms", suite_norms},     {"poles", suite_poles},
      {"prop1", suite_prop1},       {"prop2", suite_prop2},     {"prop3", suite_prop3},
      {"prop4", suite_prop4},       {"quadrant", suite_quadrant}, {"residues", suite_residues},
      {"smatrix", suite_smatrix},   {"symmetry", suite_symmetry}, {"transforms", suite_transforms},
      {"young", suite_young},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : suites()) v.push_back(k);
    return v;
  }();
  return names;
}

VerificationReport run_all(const PhysicalConfig& cfg, const std::string& suite, std::uint64_t seed,
                           const QuadratureSpec& quad) {
  cfg.validate();
  quad.validate();
  std::vector<Suite> selected;
  if (suite == "all") {
    for (const auto& [_, s] : suites()) selected.push_back(s);
  } else {
    const auto it = suites().find(suite);
    if (it == suites().end()) {
      std::string known = "all";
      for (const std::string& n : suite_names()) known += ", " + n;
      throw Error(ErrorKind::invalid_argument, "unknown suite '" + suite + "' (known: " + known + ")");
    }
    selected.push_back(it->second);
  }
  // r_max must reach past every compact family member
  QuadratureSpec q = quad;
  for (const TestFunction& f : standard_family(cfg))
    if (f.compact()) q.r_max = std::max(q.r_max, f.support_end() / cfg.a);
  const Context ctx{cfg, seed, q};
  std::vector<std::future<Entries>> jobs;
  for (Suite s : selected) jobs.push_back(std::async(std::launch::async, s, std::cref(ctx)));

  VerificationReport rep;
  rep.seed = seed;
  rep.suite = suite;
  rep.config = cfg;
  for (auto& j : jobs) {
    Entries e = j.get();
    rep.entries.insert(rep.entries.end(), std::make_move_iterator(e.begin()), std::make_move_iterator(e.end()));
  }
  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const CheckEntry& a, const CheckEntry& b) { return a.check_id < b.check_id; });
  for (std::size_t i = 1; i < rep.entries.size(); ++i)
    if (rep.entries[i].check_id == rep.entries[i - 1].check_id)
      throw std::logic_error("duplicate check id " + rep.entries[i].check_id);
  return rep;
}

std::string report_json(const VerificationReport& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr); };
  for (const CheckEntry& e : report.entries) {
    nlohmann::ordered_json j;
    j["check_id"] = e.check_id;
    j["paper_anchor"] = e.anchor;
    j["status"] = to_string(e.status);
    j["metric"] = num(e.metric);
    j["tolerance"] = num(e.tolerance);
    j["runtime"] = e.runtime;
    j["note"] = e.note;
    j["seed"] = report.seed;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace lscont
