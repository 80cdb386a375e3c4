#include "lscont/poles.hpp"

#include <algorithm>
#include <cmath>

#include "lscont/eigenfunctions.hpp"

namespace lscont {

namespace {

constexpr double kMaxPhaseStep = kPi / 4;
constexpr double kMinStep = 1e-11;

double phase_between(cplx fa, cplx fb) { return std::arg(fb / fa); }

struct Tracker {
  const std::function<cplx(cplx)>& f;
  const std::function<double(cplx)>& zero_tol;

  cplx eval(cplx z) const {
    const cplx v = f(z);
    if (!(std::abs(v) > zero_tol(z)) || !std::isfinite(std::abs(v)))
      throw Error(ErrorKind::zero_on_boundary, "function vanishes on the contour", z);
    return v;
  }

  // accumulated phase change from za to zb
  double segment(cplx za, cplx fa, cplx zb, cplx fb, int depth = 0) const {
    const double direct = phase_between(fa, fb);
    const cplx zm = 0.5 * (za + zb);
    if (std::abs(zb - za) < kMinStep * std::max(1.0, std::abs(za)))
      throw Error(ErrorKind::zero_on_boundary, "phase unresolved on the contour (zero nearby)", zm);
    if (std::abs(direct) <= kMaxPhaseStep) {
      const cplx fm = eval(zm);
      const double two = phase_between(fa, fm) + phase_between(fm, fb);
      if (std::abs(two - direct) < 1e-9 && std::abs(phase_between(fa, fm)) <= kMaxPhaseStep &&
          std::abs(phase_between(fm, fb)) <= kMaxPhaseStep)
        return direct;
      return segment(za, fa, zm, fm, depth + 1) + segment(zm, fm, zb, fb, depth + 1);
    }
    const cplx fm = eval(zm);
    return segment(za, fa, zm, fm, depth + 1) + segment(zm, fm, zb, fb, depth + 1);
  }
};

}  // namespace

int winding_number(const std::function<cplx(cplx)>& f, const std::vector<cplx>& polygon,
                   const std::function<double(cplx)>& zero_tol) {
  if (polygon.size() < 3) throw Error(ErrorKind::invalid_argument, "contour needs at least 3 vertices");
  const Tracker t{f, zero_tol};
  double total = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const cplx za = polygon[i], zb = polygon[(i + 1) % polygon.size()];
    // pre-split so that the initial pieces are short compared with typical oscillation
    const int pieces = std::max(1, int(std::ceil(std::abs(zb - za) / 0.05)));
    cplx zprev = za, fprev = t.eval(za);
    for (int p = 1; p <= pieces; ++p) {
      const cplx z = za + (zb - za) * (double(p) / pieces);
      const cplx fz = t.eval(z);
      total += t.segment(zprev, fprev, z, fz);
      zprev = z;
      fprev = fz;
    }
  }
  return int(std::lround(total / (2.0 * kPi)));
}

namespace {

std::function<cplx(cplx)> jost_fn(const PhysicalConfig& cfg, Sign sign) {
  return [cfg, sign](cplx q) {
    if (q == cplx{}) throw Error(ErrorKind::zero_on_boundary, "contour passes through q = 0", q);
    return ShellSolution(cfg, q).jost(sign);
  };
}

std::function<double(cplx)> jost_zero_tol() {
  return [](cplx q) { return 1e-12 * jost_scale(q); };
}

}  // namespace

int count_zeros(const PhysicalConfig& cfg, const Rect& rect, Sign sign) {
  if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min))
    throw Error(ErrorKind::invalid_argument, "empty rectangle");
  return winding_number(jost_fn(cfg, sign), rect.corners(), jost_zero_tol());
}

namespace {

struct Search {
  const PhysicalConfig& cfg;
  Sign sign;
  PoleSearchOptions opt;
  std::vector<JostZero> found;

  bool newton(cplx start, const Rect& cell, JostZero& out) const {
    cplx q = start;
    const double size = std::max(cell.re_max - cell.re_min, cell.im_max - cell.im_min);
    for (int it = 0; it < 80; ++it) {
      const ShellSolution sol(cfg, q);
      const cplx j = sol.jost(sign), dj = sol.jost_derivative(sign);
      if (dj == cplx{}) return false;
      const cplx step = j / dj;
      q -= step;
      if (!cell.contains(q, 2.0 * size)) return false;
      if (std::abs(step) <= opt.newton_tol * std::max(1.0, std::abs(q))) {
        const ShellSolution fin(cfg, q);
        out = {q, std::abs(fin.jost(sign)), fin.jost_derivative(sign)};
        return cell.contains(q, 1e-12 * std::max(1.0, std::abs(q)));
      }
    }
    return false;
  }

  int count(const Rect& r) const { return count_zeros(cfg, r, sign); }

  void run(const Rect& cell, int n, int depth) {
    if (n == 0) return;
    if (n == 1) {
      JostZero z;
      const cplx centre{0.5 * (cell.re_min + cell.re_max), 0.5 * (cell.im_min + cell.im_max)};
      if (newton(centre, cell, z)) {
        found.push_back(z);
        return;
      }
    }
    const double w = cell.re_max - cell.re_min, h = cell.im_max - cell.im_min;
    if (depth >= opt.max_depth)
      throw Error(ErrorKind::non_convergence, "zero search did not converge within the subdivision depth",
                  cplx{cell.re_min + 0.5 * w, cell.im_min + 0.5 * h});
    if (n >= 2 && std::max(w, h) < 1e-7 * std::max(1.0, std::abs(cplx{cell.re_min, cell.im_min})))
      throw Error(ErrorKind::unsupported_order, "suspected multiple zero",
                  cplx{cell.re_min + 0.5 * w, cell.im_min + 0.5 * h});
    // bisect the longer side; nudge the cut if it hits a zero
    for (int attempt = 0; attempt < 8; ++attempt) {
      const double frac = 0.5 + 0.0173 * attempt * ((attempt % 2) ? 1 : -1);
      Rect a = cell, b = cell;
      if (w >= h) {
        a.re_max = b.re_min = cell.re_min + frac * w;
      } else {
        a.im_max = b.im_min = cell.im_min + frac * h;
      }
      int na, nb;
      try {
        na = count(a);
        nb = count(b);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::zero_on_boundary) continue;
        throw;
      }
      if (na + nb != n) continue;  // inconsistent tracking; try another cut
      run(a, na, depth + 1);
      run(b, nb, depth + 1);
      return;
    }
    throw Error(ErrorKind::non_convergence, "could not split cell cleanly",
                cplx{cell.re_min + 0.5 * w, cell.im_min + 0.5 * h});
  }
};

}  // namespace

PoleSet find_resonances(const PhysicalConfig& cfg, const Rect& rect, Sign sign, const PoleSearchOptions& opt) {
  Search s{cfg, sign, opt, {}};
  s.run(rect, count_zeros(cfg, rect, sign), 0);
  std::sort(s.found.begin(), s.found.end(), [](const JostZero& a, const JostZero& b) {
    return a.q0.real() != b.q0.real() ? a.q0.real() < b.q0.real() : a.q0.imag() < b.q0.imag();
  });
  return {s.found, rect, sign};
}

}  // namespace lscont
