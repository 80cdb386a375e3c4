#include "lscont/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lscont/continuation.hpp"
#include "lscont/eigenfunctions.hpp"
#include "lscont/poles.hpp"

namespace lscont {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / kPi);

// zeros of J+ are searched down to this depth (times 1/a); the bent path stays above it
constexpr double kSearchDepth = 2.5;
// log of the largest |integrand| growth the bent path may pick up off the axis
constexpr double kGrowthBudget = 3.0;
// the bent path may stop once |integrand| has fallen below e^{-40} of its scale
constexpr double kDecayLog = 40.0;
constexpr std::size_t kNodeBudget = 4000000;

double panel_width(double f, int panels) { return 4.0 * kPi / (std::max(f, 1e-3) * panels); }

double grid_top(const std::vector<double>& rgrid) {
  if (rgrid.empty()) throw Error(ErrorKind::invalid_argument, "empty radial grid");
  for (std::size_t i = 1; i < rgrid.size(); ++i)
    if (!(rgrid[i] > rgrid[i - 1])) throw Error(ErrorKind::invalid_argument, "radial grid must be strictly increasing");
  if (rgrid.front() < 0.0) throw Error(ErrorKind::invalid_argument, "radial grid must be nonnegative");
  return rgrid.back();
}

double reach_of(const PhysicalConfig& cfg, const TestFunction& phi, const QuadratureSpec& quad) {
  return std::min(phi.support_end(), quad.r_limit(cfg));
}

struct PathNode {
  cplx q, w;  // w includes dq/du
};

// Gauss panels along a polyline, sized for an oscillation rate freq(|q|) and
// graded toward the singular points.
std::vector<PathNode> path_nodes(const std::vector<cplx>& vertices, const std::vector<cplx>& singular,
                                 const std::function<double(double)>& freq, const QuadratureSpec& quad) {
  std::vector<PathNode> out;
  const GaussRule& g = gauss_rule(quad.order);
  for (std::size_t s = 0; s + 1 < vertices.size(); ++s) {
    const cplx v0 = vertices[s], v1 = vertices[s + 1];
    const double len = std::abs(v1 - v0);
    if (len == 0.0) continue;
    const cplx e = (v1 - v0) / len;
    const double h = std::min(0.5, panel_width(freq(std::max(std::abs(v0), std::abs(v1))), quad.panels));
    std::vector<cplx> local;
    for (cplx z : singular) {
      const cplx u = (z - v0) / e;
      local.push_back({u.real(), std::abs(u.imag())});
    }
    std::vector<double> br{0.0, len};
    for (cplx z : local) {
      const double x0 = z.real(), d = z.imag();
      if (!(d < h) || x0 < -h || x0 > len + h) continue;
      br.push_back(x0);
      for (double step = std::max(d, 1e-12); step < h; step *= 2.0) {
        br.push_back(x0 - step);
        br.push_back(x0 + step);
      }
    }
    std::vector<double> in;
    for (double x : br)
      if (x >= 0.0 && x <= len) in.push_back(x);
    const NodeSet ns = composite_rule(in, h, int(g.x.size()));
    for (std::size_t i = 0; i < ns.size(); ++i) out.push_back({v0 + ns.x[i] * e, ns.w[i] * e});
    if (out.size() > kNodeBudget)
      throw Error(ErrorKind::non_convergence, "contour quadrature exceeds the node budget (|t| too large)");
  }
  return out;
}

std::vector<cplx> relevant_poles(const PhysicalConfig& cfg, const QuadratureSpec& quad, const EvolutionOptions& opt) {
  if (opt.poles_given) return opt.poles;
  if (cfg.v0 == 0.0) return {};
  return near_axis_resonances(cfg, quad.k_limit(cfg), kSearchDepth / cfg.a);
}

// both the Jost zeros below the path and their mirror images above the axis
// make the integrand peaked near the axis
std::vector<cplx> singular_points(const std::vector<cplx>& poles) {
  std::vector<cplx> s = poles;
  for (cplx z : poles) s.push_back(std::conj(z));
  return s;
}

double depth_cap(const PhysicalConfig& cfg, const TestFunction& phi, const QuadratureSpec& quad, bool with_poles) {
  double cap = with_poles ? 0.96 * kSearchDepth / cfg.a : 1e300;
  if (!phi.compact()) cap = std::min(cap, phi.gauss_rate() * reach_of(cfg, phi, quad) - 1.05);
  if (!(cap > 0.0)) throw Error(ErrorKind::tail_budget, "test function tail leaves no room off the real axis");
  return cap;
}

// int_{X}^{2X} |F(k)| dk times the size of chi, doubled
double truncation_bound(const PhysicalConfig& cfg, const TestFunction& phi, Channel ch, const QuadratureSpec& quad,
                        double x) {
  const GaussRule& g = gauss_rule(24);
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double k = x * (1.5 + 0.5 * g.x[i]);
    s += 0.5 * x * g.w[i] * std::abs(forward(cfg, phi, ch, k, quad));
  }
  return 2.0 * kSqrt2OverPi * 1.1 * s;
}

RadialField accumulate(const std::vector<PathNode>& nodes, const std::vector<double>& rgrid, double t,
                       const std::function<void(const PathNode&, std::vector<cplx>&)>& add) {
  RadialField f;
  f.grid = rgrid;
  f.t = t;
  f.values.assign(rgrid.size(), cplx{});
  for (const PathNode& n : nodes) add(n, f.values);
  for (cplx v : f.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::non_convergence, "contour evolution produced a non-finite value");
  return f;
}

cplx time_factor(const PhysicalConfig& cfg, cplx q, double t) { return std::exp(-kI * cfg.h2m() * q * q * t); }

// radial rules sized for |q| up to s_end/8, /4, /2 and s_end; small |q| gets the cheap ones
class TieredTransform {
 public:
  TieredTransform(const PhysicalConfig& cfg, const TestFunction& phi, const QuadratureSpec& quad, double s_end) {
    for (double f : {0.125, 0.25, 0.5, 1.0}) {
      const double top = std::max(8.0 / cfg.a, f * s_end);
      tops_.push_back(top);
      tiers_.emplace_back(cfg, phi, quad, top);
    }
  }
  const ContinuedTransform& at(cplx q) const {
    for (std::size_t i = 0; i < tops_.size(); ++i)
      if (std::abs(q) <= tops_[i]) return tiers_[i];
    return tiers_.back();
  }

 private:
  std::vector<double> tops_;
  std::vector<ContinuedTransform> tiers_;
};

enum class Formula { retarded, advanced };

// Remainder of an open path over three times its length: a ray goes on as a
// ray, a bent path at constant depth (the resonance row only gets deeper).
// Sup over r of the integrand, 32 Gauss points, doubled.
double open_tail(const PlannedContour& path, const std::function<double(const PathNode&)>& magnitude) {
  const cplx end = path.vertices.back();
  const cplx dir = path.vertices.size() == 2 ? end / std::abs(end) : cplx{1.0, 0.0};
  const double h = 1.5 * std::max(std::abs(end), 1.0);
  const GaussRule& g = gauss_rule(32);
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += magnitude({end + (h * (1.0 + g.x[i])) * dir, h * g.w[i] * dir});
  return 2.0 * s;
}

// Evolution integral of the interacting channel along a fourth- or first-
// quadrant path. The advanced formula is written with p = -conj(q) on the
// mirrored path, so `vertices` always holds the unmirrored path.
RadialField interacting_on_path(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign, double t,
                                const std::vector<double>& rgrid, const QuadratureSpec& quad,
                                const PlannedContour& path, Formula formula) {
  const double top = grid_top(rgrid);
  const double reach = reach_of(cfg, phi, quad) + top;
  const double s_end = std::abs(path.vertices.back());
  const TieredTransform ct(cfg, phi, quad, s_end);
  const auto nodes = path_nodes(path.vertices, singular_points(path.poles),
                                [&](double s) { return reach + 2.0 * cfg.h2m() * s * std::abs(t); }, quad);
  const Sign bra_side = opposite(sign);
  auto add = [&](const PathNode& n, std::vector<cplx>& out) {
    const cplx p = formula == Formula::retarded ? n.q : -n.q;
    const ShellSolution sol(cfg, p);
    const cplx bra = kSqrt2OverPi * ct.at(p).regular_integral(p) / sol.jost(bra_side);
    cplx c = bra * kSqrt2OverPi / sol.jost(sign);
    if (formula == Formula::retarded) {
      c *= n.w * time_factor(cfg, n.q, t);
      for (std::size_t i = 0; i < rgrid.size(); ++i) out[i] += c * sol.value(rgrid[i]);
    } else {
      c = std::conj(c * n.w) * time_factor(cfg, std::conj(n.q), t);
      for (std::size_t i = 0; i < rgrid.size(); ++i) out[i] += c * std::conj(sol.value(rgrid[i]));
    }
  };
  RadialField f = accumulate(nodes, rgrid, t, add);
  if (path.closed) {
    f.tail_bound = truncation_bound(cfg, phi, sign == Sign::plus ? Channel::plus : Channel::minus, quad, s_end);
  } else {
    f.tail_bound = open_tail(path, [&](const PathNode& n) {
      std::vector<cplx> one(rgrid.size());
      add(n, one);
      double m = 0.0;
      for (cplx v : one) m = std::max(m, std::abs(v));
      return m;
    });
  }
  return f;
}

RadialField free_on_path(const PhysicalConfig& cfg, const TestFunction& phi, double t,
                         const std::vector<double>& rgrid, const QuadratureSpec& quad, const PlannedContour& path,
                         Formula formula) {
  const double top = grid_top(rgrid);
  const double reach = reach_of(cfg, phi, quad) + top;
  const double s_end = std::abs(path.vertices.back());
  const TieredTransform ct(cfg, phi, quad, s_end);
  const auto nodes =
      path_nodes(path.vertices, {}, [&](double s) { return reach + 2.0 * cfg.h2m() * s * std::abs(t); }, quad);
  auto add = [&](const PathNode& n, std::vector<cplx>& out) {
    const cplx p = formula == Formula::retarded ? n.q : -n.q;
    cplx c = (2.0 / kPi) * ct.at(p).free_integral(p);
    if (formula == Formula::retarded) {
      c *= n.w * time_factor(cfg, n.q, t);
      for (std::size_t i = 0; i < rgrid.size(); ++i) out[i] += c * std::sin(p * rgrid[i]);
    } else {
      c = std::conj(c * n.w) * time_factor(cfg, std::conj(n.q), t);
      for (std::size_t i = 0; i < rgrid.size(); ++i) out[i] += c * std::conj(std::sin(p * rgrid[i]));
    }
  };
  RadialField f = accumulate(nodes, rgrid, t, add);
  if (path.closed) {
    f.tail_bound = truncation_bound(cfg, phi, Channel::free, quad, s_end);
  } else {
    f.tail_bound = open_tail(path, [&](const PathNode& n) {
      std::vector<cplx> one(rgrid.size());
      add(n, one);
      double m = 0.0;
      for (cplx v : one) m = std::max(m, std::abs(v));
      return m;
    });
  }
  return f;
}

PlannedContour plan_for(const PhysicalConfig& cfg, const TestFunction& phi, double t, const std::vector<double>& rgrid,
                        const QuadratureSpec& quad, const std::vector<cplx>& poles, double eps, bool bend) {
  ContourSpec spec;
  spec.kind = bend ? ContourSpec::Kind::bent_ray : ContourSpec::Kind::radial_ray;
  spec.angle = -eps;
  const double reach = reach_of(cfg, phi, quad) + grid_top(rgrid);
  return plan_contour(cfg, spec, t, reach, poles, quad.k_limit(cfg), depth_cap(cfg, phi, quad, cfg.v0 != 0.0));
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < kPi / 2))
    throw Error(ErrorKind::invalid_argument, "contour angle eps must lie in (0, pi/2)");
}

}  // namespace

double l2_norm(const RadialField& f) {
  double s = 0.0;
  for (std::size_t i = 1; i < f.grid.size(); ++i)
    s += 0.5 * (f.grid[i] - f.grid[i - 1]) * (std::norm(f.values[i]) + std::norm(f.values[i - 1]));
  return std::sqrt(s);
}

double relative_l2_difference(const RadialField& a, const RadialField& b) {
  if (a.grid != b.grid) throw Error(ErrorKind::invalid_argument, "fields live on different grids");
  RadialField d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
  return l2_norm(d) / l2_norm(b);
}

const char* to_string(ContourSpec::Kind k) {
  switch (k) {
    case ContourSpec::Kind::real_axis: return "real_axis";
    case ContourSpec::Kind::radial_ray: return "radial_ray";
    case ContourSpec::Kind::bent_ray: return "bent_ray";
  }
  return "?";
}

const char* to_string(ArcBehavior b) { return b == ArcBehavior::decays ? "decays" : "blows_up"; }

RadialField group_evolve(const PhysicalConfig& cfg, const SpectralFunction& f, Channel channel, double t,
                         const std::vector<double>& rgrid) {
  grid_top(rgrid);
  const double h2m = cfg.h2m();
  const SpectralFunction ft = f.map([&](double k, cplx v) { return v * std::exp(-kI * h2m * k * k * t); });
  RadialField out;
  out.grid = rgrid;
  out.t = t;
  out.values = inverse(cfg, ft, channel, rgrid);
  out.tail_bound = 1.1 * kSqrt2OverPi * f.tail_l1(64);
  return out;
}

RadialField group_evolve(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel, double t,
                         const std::vector<double>& rgrid, const QuadratureSpec& quad) {
  const double top = grid_top(rgrid);
  // the k-grid resolves e^{2 i k r_limit}; widen it to cover the phase of e^{-iEt}
  // and of chi at the largest requested radius
  QuadratureSpec wide = quad;
  const double need = 0.5 * (reach_of(cfg, phi, quad) + top) + cfg.h2m() * quad.k_limit(cfg) * std::abs(t);
  wide.r_max = std::max(quad.r_max, need / cfg.a);
  const double h = panel_width(2.0 * wide.r_limit(cfg), wide.panels);
  if (quad.k_limit(cfg) / h * wide.order > double(kNodeBudget))
    throw Error(ErrorKind::non_convergence, "|t| too large for the spectral grid budget");
  return group_evolve(cfg, SpectralFunction::transform(cfg, phi, channel, wide), channel, t, rgrid);
}

PlannedContour plan_contour(const PhysicalConfig& cfg, const ContourSpec& spec, double t, double r_reach,
                            const std::vector<cplx>& poles, double s_max, double depth_cap) {
  if (!(s_max > 0.0)) throw Error(ErrorKind::invalid_argument, "contour length must be positive");
  if (!(std::abs(spec.angle) < kPi / 2)) throw Error(ErrorKind::invalid_argument, "contour angle must lie in (-pi/2, pi/2)");
  PlannedContour pc;
  const bool upper = spec.angle > 0.0;
  const double theta = std::abs(spec.angle);
  // work in the fourth quadrant; the upper case is the mirror image (J-(q) = conj J+(conj q))
  for (cplx z : poles)
    if (z.imag() < 0.0 && z.real() > 0.0 && z.real() < s_max) pc.poles.push_back(z);
  std::sort(pc.poles.begin(), pc.poles.end(), [](cplx x, cplx y) { return x.real() < y.real(); });

  if (spec.kind == ContourSpec::Kind::real_axis || theta == 0.0) {
    pc.vertices = {0.0, s_max};
  } else if (!spec.bend.empty()) {
    pc.vertices = spec.bend;
    if (upper)
      for (cplx& v : pc.vertices) v = std::conj(v);
    pc.closed = pc.vertices.back().imag() == 0.0;
  } else if (spec.kind == ContourSpec::Kind::radial_ray) {
    // stop where s sin(theta) r_reach - h2m s^2 sin(2 theta) |t| falls below -40
    const double qa = cfg.h2m() * std::sin(2.0 * theta) * std::abs(t), qb = std::sin(theta) * r_reach;
    const double s_cut = qa > 0.0 ? (qb + std::sqrt(qb * qb + 4.0 * qa * kDecayLog)) / (2.0 * qa) : s_max;
    pc.vertices = {0.0, std::polar(std::min(s_max, s_cut), -theta)};
    pc.closed = false;
  } else {
    const double slope = std::tan(theta), h2m = cfg.h2m(), at = std::abs(t);
    auto pole_line = [&](double x) {
      // linear through (Re z, depth - margin) of consecutive poles
      if (pc.poles.empty()) return 1e300;
      auto depth = [](cplx z) { return -z.imag() - std::min(0.05, -0.5 * z.imag()); };
      if (x <= pc.poles.front().real()) {
        const double x0 = pc.poles.front().real();
        return x >= x0 ? depth(pc.poles.front()) : depth(pc.poles.front()) + slope * (x0 - x);
      }
      for (std::size_t i = 0; i + 1 < pc.poles.size(); ++i) {
        const double xa = pc.poles[i].real(), xb = pc.poles[i + 1].real();
        if (x <= xb) {
          const double f = (x - xa) / (xb - xa);
          return (1 - f) * depth(pc.poles[i]) + f * depth(pc.poles[i + 1]);
        }
      }
      return depth(pc.poles.back());
    };
    auto depth_at = [&](double x) {
      double y = std::min({slope * x, slope * (s_max - x), depth_cap, pole_line(x)});
      const double lever = r_reach - 2.0 * h2m * x * at;
      if (lever > 0.0) y = std::min(y, kGrowthBudget / lever);
      return std::max(y, 0.0);
    };
    std::vector<double> xs{0.0, s_max};
    for (double x = 0.5; x < s_max; x += 0.5) xs.push_back(x);
    for (cplx z : pc.poles) xs.push_back(z.real());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (double x : xs) {
      const double y = depth_at(x);
      pc.vertices.push_back({x, -y});
      // the rest of the path is Gaussian-small: stop here, the caller bounds the remainder
      if (y * (2.0 * h2m * x * at - r_reach) >= kDecayLog) {
        pc.closed = false;
        break;
      }
    }
  }

  // certificate: no zero of J+ between the path and the real axis
  if (cfg.v0 != 0.0 && pc.vertices.size() >= 2 && pc.vertices.back() != pc.vertices.front()) {
    std::vector<cplx> poly;
    const cplx first = pc.vertices[1];
    poly.push_back(1e-3 * first / std::abs(first));
    for (std::size_t i = 1; i < pc.vertices.size(); ++i) poly.push_back(pc.vertices[i]);
    const double end_re = pc.vertices.back().real();
    if (pc.vertices.back().imag() != 0.0) poly.push_back(end_re);
    poly.push_back(1e-3 * std::abs(first));
    bool flat = true;
    for (cplx v : poly) flat = flat && v.imag() == 0.0;
    if (!flat) {
      const std::function<cplx(cplx)> jp = [&cfg](cplx q) { return ShellSolution(cfg, q).jost(Sign::plus); };
      const std::function<double(cplx)> tol = [](cplx q) { return 1e-12 * jost_scale(q); };
      try {
        pc.enclosed = std::abs(winding_number(jp, poly, tol));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::zero_on_boundary) throw;
        throw Error(ErrorKind::pole_in_sector, std::string("contour passes through a resonance: ") + e.what(),
                    e.location());
      }
      if (pc.enclosed != 0) {
        std::optional<cplx> where;
        for (cplx z : pc.poles)
          if (std::arg(z) > -theta) {
            where = upper ? std::conj(z) : z;
            break;
          }
        throw Error(ErrorKind::pole_in_sector,
                    std::to_string(pc.enclosed) + " resonance(s) between the contour (" + to_string(spec.kind) +
                        ", angle " + std::to_string(spec.angle) + ") and the real axis",
                    where);
      }
    }
  }
  if (upper) {
    for (cplx& v : pc.vertices) v = std::conj(v);
    for (cplx& z : pc.poles) z = std::conj(z);
  }
  return pc;
}

RadialField retarded_evolve(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign, double t,
                            const std::vector<double>& rgrid, const QuadratureSpec& quad,
                            const EvolutionOptions& opt) {
  if (!(t > 0.0))
    throw Error(ErrorKind::domain, "retarded evolution is not defined for t<0 (or t = 0); got t = " + std::to_string(t));
  check_eps(opt.eps);
  const PlannedContour path = plan_for(cfg, phi, t, rgrid, quad, relevant_poles(cfg, quad, opt), opt.eps, opt.allow_bend);
  return interacting_on_path(cfg, phi, sign, t, rgrid, quad, path, Formula::retarded);
}

RadialField advanced_evolve(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign, double t,
                            const std::vector<double>& rgrid, const QuadratureSpec& quad,
                            const EvolutionOptions& opt) {
  if (!(t < 0.0))
    throw Error(ErrorKind::domain, "advanced evolution is not defined for t>0 (or t = 0); got t = " + std::to_string(t));
  check_eps(opt.eps);
  // the mirrored path -conj(p) meets the mirrored poles exactly when p meets Z+
  const PlannedContour path = plan_for(cfg, phi, t, rgrid, quad, relevant_poles(cfg, quad, opt), opt.eps, opt.allow_bend);
  return interacting_on_path(cfg, phi, sign, t, rgrid, quad, path, Formula::advanced);
}

RadialField free_retarded_evolve(const PhysicalConfig& cfg, const TestFunction& phi, double t,
                                 const std::vector<double>& rgrid, const QuadratureSpec& quad, double eps) {
  if (!(t > 0.0))
    throw Error(ErrorKind::domain, "free retarded evolution is not defined for t<0 (or t = 0); got t = " + std::to_string(t));
  check_eps(eps);
  const PhysicalConfig free = [&] {
    PhysicalConfig c = cfg;
    c.v0 = 0.0;
    return c;
  }();
  const PlannedContour path = plan_for(free, phi, t, rgrid, quad, {}, eps, true);
  return free_on_path(cfg, phi, t, rgrid, quad, path, Formula::retarded);
}

RadialField free_advanced_evolve(const PhysicalConfig& cfg, const TestFunction& phi, double t,
                                 const std::vector<double>& rgrid, const QuadratureSpec& quad, double eps) {
  if (!(t < 0.0))
    throw Error(ErrorKind::domain, "free advanced evolution is not defined for t>0 (or t = 0); got t = " + std::to_string(t));
  check_eps(eps);
  PhysicalConfig free = cfg;
  free.v0 = 0.0;
  const PlannedContour path = plan_for(free, phi, t, rgrid, quad, {}, eps, true);
  return free_on_path(cfg, phi, t, rgrid, quad, path, Formula::advanced);
}

QuadrantLimit quadrant_limit(double angle, double t) {
  if (t == 0.0) throw Error(ErrorKind::ill_defined, "no limit to classify at t = 0");
  const double s2 = std::sin(2.0 * angle);
  if (std::abs(s2) < 1e-12) throw Error(ErrorKind::ill_defined, "direction lies on an axis; |e^{-iq^2 t}| does not decide");
  QuadrantLimit out{};
  const double radii[3] = {10.0, 20.0, 40.0};
  for (int i = 0; i < 3; ++i) {
    const cplx q = std::polar(radii[i], angle);
    out.log_magnitude[i] = (-kI * q * q * t).real();
  }
  const bool down = out.log_magnitude[1] < out.log_magnitude[0] && out.log_magnitude[2] < out.log_magnitude[1] &&
                    out.log_magnitude[2] < 0.0;
  const bool up = out.log_magnitude[1] > out.log_magnitude[0] && out.log_magnitude[2] > out.log_magnitude[1] &&
                  out.log_magnitude[2] > 0.0;
  if (!down && !up) throw Error(ErrorKind::ill_defined, "no monotone trend along the ray");
  out.behavior = down ? ArcBehavior::decays : ArcBehavior::blows_up;
  out.matches_rule = down == (t * s2 < 0.0);
  return out;
}

QuadrantLimit quadrant_limit(Quadrant quadrant, double t) {
  return quadrant_limit((2.0 * int(quadrant) - 1.0) * kPi / 4.0, t);
}

ContourEquivalence contour_equivalence_check(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign,
                                             double t, const ContourSpec& a, const ContourSpec& b,
                                             const std::vector<double>& rgrid, const QuadratureSpec& quad,
                                             const EvolutionOptions& opt) {
  ContourEquivalence rep;
  auto angle_of = [](const ContourSpec& c) { return c.kind == ContourSpec::Kind::real_axis ? 0.0 : c.angle; };
  const double ta = angle_of(a), tb = angle_of(b);
  if (t == 0.0) {
    rep.refused = true;
    rep.reason = "t = 0: nothing to deform";
    return rep;
  }
  if (ta * tb < 0.0) {
    rep.refused = true;
    rep.reason = "contours lie on opposite sides of the real axis";
    return rep;
  }
  for (double th : {ta, tb}) {
    if (th == 0.0) continue;
    const QuadrantLimit ql = quadrant_limit(th, t);
    if (ql.behavior == ArcBehavior::blows_up) {
      rep.refused = true;
      rep.reason = "closing arc grows along the ray at angle " + std::to_string(th) + " for t = " + std::to_string(t) +
                   " (log|e^{-iq^2 t}| = " + std::to_string(ql.log_magnitude[2]) + " at |q| = 40)";
      return rep;
    }
  }
  const double widest = std::max(std::abs(ta), std::abs(tb));
  rep.alpha_min = cfg.mass * std::tan(widest) / (2.0 * cfg.hbar * std::abs(t));

  const double reach = reach_of(cfg, phi, quad) + grid_top(rgrid);
  const auto poles = relevant_poles(cfg, quad, opt);
  const double cap = depth_cap(cfg, phi, quad, cfg.v0 != 0.0);
  RadialField fa, fb;
  try {
    ContourSpec sa = a, sb = b;
    const PlannedContour pa = plan_contour(cfg, sa, t, reach, poles, quad.k_limit(cfg), cap);
    const PlannedContour pb = plan_contour(cfg, sb, t, reach, poles, quad.k_limit(cfg), cap);
    rep.enclosed_a = pa.enclosed;
    rep.enclosed_b = pb.enclosed;
    fa = interacting_on_path(cfg, phi, sign, t, rgrid, quad, pa, Formula::retarded);
    fb = interacting_on_path(cfg, phi, sign, t, rgrid, quad, pb, Formula::retarded);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::pole_in_sector) throw;
    rep.refused = true;
    rep.reason = e.what();
    return rep;
  }
  rep.difference = relative_l2_difference(fa, fb);
  return rep;
}

FormalEvolution formal_braket_evolution(const PhysicalConfig& cfg, cplx q, double t, BraKet kind) {
  FormalEvolution out;
  const double s = kind == BraKet::ket ? 1.0 : -1.0;
  out.multiplier = std::exp(-s * kI * cfg.h2m() * q * q * t);
  if (q.imag() == 0.0 || t == 0.0) {
    out.valid = true;
    out.note = "unimodular on the real axis";
    return out;
  }
  if (q.real() == 0.0) {
    out.valid = false;
    out.note = "imaginary axis: no decaying direction";
    return out;
  }
  const QuadrantLimit ql = quadrant_limit(std::arg(q), s * t);
  out.valid = ql.behavior == ArcBehavior::decays;
  out.note = std::string("multiplier ") + to_string(ql.behavior) + " along arg q";
  return out;
}

}  // namespace lscont
