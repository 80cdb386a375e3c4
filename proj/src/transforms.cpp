#include "lscont/transforms.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <tuple>

#include "lscont/poles.hpp"

namespace lscont {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / kPi);

// Panel width for an oscillation of frequency f: a 20-point Gauss panel
// integrates two full periods of a sine to ~1e-16.
double panel_width(double f, int panels) { return 4.0 * kPi / (std::max(f, 1e-3) * panels); }

using ConfigKey = std::tuple<double, double, double, double>;
ConfigKey key_of(const PhysicalConfig& cfg) { return {cfg.h2m(), cfg.a, cfg.b, cfg.v0}; }

std::vector<double> support_breaks(const PhysicalConfig& cfg, const TestFunction& phi, const QuadratureSpec& quad,
                                   double hi) {
  const double lo = phi.support_begin();
  std::vector<double> br{lo, hi};
  for (const Interval& iv : phi.support()) {
    br.push_back(iv.lo);
    br.push_back(iv.hi);
  }
  br.push_back(cfg.a);
  br.push_back(cfg.b);
  for (double x : quad.split_points) br.push_back(x);
  std::vector<double> out;
  for (double x : br)
    if (x >= lo && x <= hi) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// conj(chi_channel(r;k)) = factor * chi(r;k) with chi real
cplx conj_factor(const RealShell& sh, Channel ch) {
  switch (ch) {
    case Channel::plus: return kSqrt2OverPi / std::conj(sh.jost_plus());
    case Channel::minus: return kSqrt2OverPi / sh.jost_plus();
    case Channel::free: return kSqrt2OverPi;
  }
  return {};
}

cplx forward_on_rule(const PhysicalConfig& cfg, const RadialRule& rr, Channel ch, double k) {
  if (ch == Channel::free) {
    double s = 0.0;
    for (std::size_t i = 0; i < rr.wphi.size(); ++i) s += rr.wphi[i] * std::sin(k * rr.nodes.x[i]);
    return kSqrt2OverPi * s;
  }
  const RealShell sh(cfg, k);
  double s = 0.0;
  for (std::size_t i = 0; i < rr.wphi.size(); ++i) s += rr.wphi[i] * sh.value(rr.nodes.x[i]);
  return conj_factor(sh, ch) * s;
}

double chi_bound(const PhysicalConfig& cfg, Channel ch, double k) {
  if (ch == Channel::free) return kSqrt2OverPi;
  const RealShell sh(cfg, k);
  return kSqrt2OverPi * std::max(1.0, sh.outer_bound()) / std::abs(sh.jost_plus());
}

}  // namespace

const char* to_string(Channel c) {
  switch (c) {
    case Channel::plus: return "plus";
    case Channel::minus: return "minus";
    case Channel::free: return "free";
  }
  return "?";
}

Channel parse_channel(const std::string& s) {
  if (s == "plus" || s == "+") return Channel::plus;
  if (s == "minus" || s == "-") return Channel::minus;
  if (s == "free" || s == "0") return Channel::free;
  throw Error(ErrorKind::invalid_argument, "channel must be plus, minus or free");
}

const std::vector<cplx>& near_axis_resonances(const PhysicalConfig& cfg, double k_limit, double depth) {
  static std::mutex mu;
  static std::map<std::tuple<ConfigKey, double, double>, std::vector<cplx>> cache;
  const auto key = std::make_tuple(key_of(cfg), k_limit, depth);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> zeros;
  if (cfg.v0 != 0.0) {
    // the rectangle edges are nudged if a zero happens to sit on them
    for (double nudge = 1.0;; nudge *= 1.013) {
      try {
        const Rect rect{0.01 / cfg.a, k_limit + depth, -depth * nudge, -1e-12};
        for (const JostZero& z : find_resonances(cfg, rect, Sign::plus).zeros) zeros.push_back(z.q0);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::zero_on_boundary || nudge > 1.2) throw;
        zeros.clear();
      }
    }
  }
  return cache.emplace(key, std::move(zeros)).first->second;
}

NodeSet graded_rule(double lo, double hi, double h_max, int order, const std::vector<cplx>& singular) {
  std::vector<double> br{lo, hi};
  for (cplx z : singular) {
    const double x0 = z.real(), d = std::abs(z.imag());
    if (!(d < h_max) || x0 < lo - h_max || x0 > hi + h_max) continue;
    br.push_back(x0);
    for (double h = d; h < h_max; h *= 2.0) {
      br.push_back(x0 - h);
      br.push_back(x0 + h);
    }
  }
  std::vector<double> in;
  for (double x : br)
    if (x >= lo && x <= hi) in.push_back(x);
  return composite_rule(in, h_max, order);
}

void QuadratureSpec::validate() const {
  if (!(r_max > 0.0) || !(k_max > 0.0) || !std::isfinite(r_max) || !std::isfinite(k_max))
    throw Error(ErrorKind::invalid_argument, "quadrature extents r_max and k_max must be positive and finite");
  if (panels < 1) throw Error(ErrorKind::invalid_argument, "quadrature needs at least one panel per period");
  if (order < 2 || order > 200) throw Error(ErrorKind::invalid_argument, "Gauss-Legendre order must lie in [2, 200]");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw Error(ErrorKind::invalid_argument, "quadrature tolerances must be positive");
}

RadialRule radial_rule(const PhysicalConfig& cfg, const TestFunction& phi, const QuadratureSpec& quad,
                       double k_top) {
  quad.validate();
  RadialRule rr;
  const double hi = std::min(phi.support_end(), quad.r_limit(cfg));
  double h = std::min(0.5 * cfg.a, panel_width(std::max(k_top, 1.0), quad.panels));
  // a narrow bump needs a few panels of its own
  if (phi.compact()) h = std::min(h, (phi.support_end() - phi.support_begin()) / 8.0);
  rr.nodes = composite_rule(support_breaks(cfg, phi, quad, hi), h, quad.order);
  rr.wphi.resize(rr.nodes.size());
  for (std::size_t i = 0; i < rr.nodes.size(); ++i) rr.wphi[i] = rr.nodes.w[i] * phi.value(rr.nodes.x[i]);
  rr.tail_r = hi;
  rr.tail_weight = 0.0;
  if (phi.support_end() > hi) {
    // measured part up to the numerical end of support, certificate beyond
    const auto part = integrate_adaptive([&](double r) { return std::abs(phi.value(r)); },
                                         {hi, phi.support_end()}, 1e-300, 1e-6);
    rr.tail_weight = part.value + part.error + phi.tail_m * 0.5 * std::sqrt(kPi) * std::erfc(phi.support_end());
  }
  return rr;
}

ForwardResult forward_detail(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel, double k,
                             const QuadratureSpec& quad) {
  if (!(k > 0.0)) throw Error(ErrorKind::invalid_argument, "forward transform needs k > 0");
  ForwardResult out;
  if (quad.scheme == QuadratureSpec::Scheme::adaptive) {
    const double hi = std::min(phi.support_end(), quad.r_limit(cfg));
    std::optional<RealShell> sh;
    if (channel != Channel::free) sh.emplace(cfg, k);
    auto f = [&](double r) { return phi.value(r) * (sh ? sh->value(r) : std::sin(k * r)); };
    const auto res = integrate_adaptive(f, support_breaks(cfg, phi, quad, hi), quad.abs_tol, quad.rel_tol, 20000);
    if (res.error > std::max(quad.abs_tol, quad.rel_tol * std::abs(res.value)))
      throw Error(ErrorKind::non_convergence, "forward transform did not reach tolerance at k = " + std::to_string(k));
    out.value = (sh ? conj_factor(*sh, channel) : kSqrt2OverPi) * res.value;
    out.quad_error = kSqrt2OverPi * res.error;
  } else {
    const RadialRule rr = radial_rule(cfg, phi, quad, std::max(k, quad.k_limit(cfg)));
    QuadratureSpec low = quad;
    low.order = std::max(4, quad.order - 6);
    const RadialRule rr_low = radial_rule(cfg, phi, low, std::max(k, quad.k_limit(cfg)));
    out.value = forward_on_rule(cfg, rr, channel, k);
    out.quad_error = std::abs(out.value - forward_on_rule(cfg, rr_low, channel, k));
  }
  if (phi.support_end() > quad.r_limit(cfg)) {
    const RadialRule rr = radial_rule(cfg, phi, quad, 1.0);
    out.tail_bound = rr.tail_weight * chi_bound(cfg, channel, k);
  }
  return out;
}

cplx forward(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel, double k,
             const QuadratureSpec& quad) {
  return forward_detail(cfg, phi, channel, k, quad).value;
}

cplx chi_channel(const PhysicalConfig& cfg, Channel channel, double r, double k) {
  if (channel == Channel::free) return kSqrt2OverPi * std::sin(k * r);
  const RealShell sh(cfg, k);
  return std::conj(conj_factor(sh, channel)) * sh.value(r);
}

SpectralFunction::SpectralFunction(std::vector<double> k, std::vector<double> w, std::vector<cplx> values,
                                   Evaluator eval)
    : k_(std::move(k)), w_(std::move(w)), v_(std::move(values)), eval_(std::move(eval)) {
  if (k_.size() != w_.size() || k_.size() != v_.size())
    throw Error(ErrorKind::invalid_argument, "spectral samples, weights and nodes differ in length");
}

const NodeSet& spectral_grid(const PhysicalConfig& cfg, const QuadratureSpec& quad) {
  quad.validate();
  static std::mutex mu;
  static std::map<std::tuple<ConfigKey, double, double, int, int>, NodeSet> cache;
  const auto key = std::make_tuple(key_of(cfg), quad.r_limit(cfg), quad.k_limit(cfg), quad.panels, quad.order);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double h = std::min(1.0 / cfg.a, panel_width(2.0 * quad.r_limit(cfg), quad.panels));
  const auto& poles = near_axis_resonances(cfg, quad.k_limit(cfg), h);
  NodeSet grid = graded_rule(0.0, quad.k_limit(cfg), h, quad.order, poles);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(grid)).first->second;
}

SpectralFunction SpectralFunction::transform(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel,
                                             const QuadratureSpec& quad) {
  const NodeSet& grid = spectral_grid(cfg, quad);
  auto rr = std::make_shared<const RadialRule>(radial_rule(cfg, phi, quad, quad.k_limit(cfg)));
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = forward_on_rule(cfg, *rr, channel, grid.x[i]);
  // off-grid k beyond the design range get their own, finer rule
  auto eval = [cfg, rr, channel, quad, phi](double k) {
    if (k <= quad.k_limit(cfg)) return forward_on_rule(cfg, *rr, channel, k);
    return forward_on_rule(cfg, radial_rule(cfg, phi, quad, k), channel, k);
  };
  return SpectralFunction(grid.x, grid.w, std::move(v), eval);
}

SpectralFunction SpectralFunction::map(const std::function<cplx(double, cplx)>& g) const {
  std::vector<cplx> v(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v[i] = g(k_[i], v_[i]);
  Evaluator inner = eval_;
  return SpectralFunction(k_, w_, std::move(v), [inner, g](double k) { return g(k, inner(k)); });
}

double SpectralFunction::norm2() const {
  double s = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) s += w_[i] * std::norm(v_[i]);
  return s;
}

cplx SpectralFunction::inner(const SpectralFunction& g) const {
  if (g.size() != size()) throw Error(ErrorKind::invalid_argument, "spectral functions live on different grids");
  cplx s = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) s += w_[i] * std::conj(v_[i]) * g.v_[i];
  return s;
}

double SpectralFunction::tail_norm2(int samples) const {
  const double lo = k_max(), hi = 2.0 * k_max();
  const int panels = std::max(1, samples / 8);
  const NodeSet r = composite_rule({lo, hi}, (hi - lo) / panels, 8);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::norm(eval_(r.x[i]));
  return 2.0 * s;
}

double SpectralFunction::tail_l1(int samples) const {
  const double lo = k_max(), hi = 2.0 * k_max();
  const int panels = std::max(1, samples / 8);
  const NodeSet r = composite_rule({lo, hi}, (hi - lo) / panels, 8);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::abs(eval_(r.x[i]));
  return 2.0 * s;
}

std::vector<cplx> inverse(const PhysicalConfig& cfg, const SpectralFunction& f, Channel channel,
                          const std::vector<double>& r) {
  std::vector<cplx> out(r.size());
  const auto& k = f.k();
  const auto& w = f.weights();
  const auto& v = f.values();
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (channel == Channel::free) {
      const cplx c = w[j] * v[j] * kSqrt2OverPi;
      for (std::size_t i = 0; i < r.size(); ++i) out[i] += c * std::sin(k[j] * r[i]);
      continue;
    }
    const RealShell sh(cfg, k[j]);
    const cplx c = w[j] * v[j] * std::conj(conj_factor(sh, channel));
    for (std::size_t i = 0; i < r.size(); ++i) out[i] += c * sh.value(r[i]);
  }
  return out;
}

cplx inverse(const PhysicalConfig& cfg, const SpectralFunction& f, Channel channel, double r) {
  return inverse(cfg, f, channel, std::vector<double>{r}).front();
}

MollerImage::MollerImage(const PhysicalConfig& cfg, SpectralFunction free_rep, Sign sign)
    : cfg_(cfg), f0_(std::move(free_rep)), channel_(sign == Sign::plus ? Channel::plus : Channel::minus) {}

MollerImage moller_apply(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign, const QuadratureSpec& quad) {
  return MollerImage(cfg, SpectralFunction::transform(cfg, phi, Channel::free, quad), sign);
}

MollerCheck moller_check(const PhysicalConfig& cfg, const TestFunction& phi, Sign sign, const QuadratureSpec& quad,
                         double radius) {
  MollerCheck out;
  out.radius = radius > 0.0 ? radius : 40.0 * cfg.a;
  // the k-grid has to resolve chi(r;k) out to R
  QuadratureSpec wide = quad;
  wide.r_max = std::max(quad.r_max, out.radius / cfg.a);
  const PhysicalConfig free{cfg.hbar, cfg.mass, cfg.a, cfg.b, 0.0};
  const Channel ch = sign == Sign::plus ? Channel::plus : Channel::minus;

  const SpectralFunction f0 = SpectralFunction::transform(cfg, phi, Channel::free, wide);
  const SpectralFunction fh = SpectralFunction::transform(cfg, phi.apply_H(free), Channel::free, wide);
  const double h2m = cfg.h2m();
  std::vector<cplx> diff(f0.size());
  for (std::size_t i = 0; i < f0.size(); ++i) diff[i] = h2m * f0.k()[i] * f0.k()[i] * f0.values()[i] - fh.values()[i];
  const SpectralFunction d(f0.k(), f0.weights(), std::move(diff), [](double) { return cplx{}; });

  const double panel = std::min(0.5 * cfg.a, panel_width(std::min(quad.k_limit(cfg), 40.0 / cfg.a), quad.panels));
  const NodeSet rn = composite_rule({0.0, cfg.a, cfg.b, out.radius}, panel, quad.order);
  const auto omega = inverse(cfg, f0, ch, rn.x);
  const auto delta = inverse(cfg, d, ch, rn.x);
  double n2 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < rn.size(); ++i) {
    n2 += rn.w[i] * std::norm(omega[i]);
    d2 += rn.w[i] * std::norm(delta[i]);
  }
  const double norm = l2_norm(phi);
  out.isometry = std::abs(std::sqrt(n2) - norm) / norm;
  out.intertwining = std::sqrt(d2) / norm;
  return out;
}

cplx s_matrix_element(const PhysicalConfig& cfg, const TestFunction& phi_minus, const TestFunction& phi_plus,
                      const QuadratureSpec& quad) {
  const SpectralFunction fm = SpectralFunction::transform(cfg, phi_minus, Channel::minus, quad);
  const SpectralFunction fp = SpectralFunction::transform(cfg, phi_plus, Channel::plus, quad);
  cplx s = 0.0;
  for (std::size_t i = 0; i < fm.size(); ++i) {
    const cplx jp = cfg.v0 == 0.0 ? cplx{1.0} : RealShell(cfg, fm.k()[i]).jost_plus();
    s += fm.weights()[i] * std::conj(fm.values()[i]) * (std::conj(jp) / jp) * fp.values()[i];
  }
  return s;
}

TransformCheck transform_check(const PhysicalConfig& cfg, const TestFunction& phi, Channel channel,
                               const QuadratureSpec& quad, int samples) {
  TransformCheck out;
  const SpectralFunction f = SpectralFunction::transform(cfg, phi, channel, quad);
  const double norm = l2_norm(phi);
  out.parseval = std::abs(std::sqrt(f.norm2()) - norm) / norm;
  out.tail_norm2 = f.tail_norm2() / (norm * norm);

  const double lo = phi.support_begin(), hi = std::min(phi.support_end(), quad.r_limit(cfg));
  std::vector<double> r(samples);
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) r[i] = lo + (i + 0.5) * (hi - lo) / samples;
  for (int i = 0; i <= 4000; ++i) sup = std::max(sup, std::abs(phi.value(lo + i * (hi - lo) / 4000)));
  const auto back = inverse(cfg, f, channel, r);
  for (int i = 0; i < samples; ++i) out.roundtrip = std::max(out.roundtrip, std::abs(back[i] - phi.value(r[i])) / sup);

  const PhysicalConfig hcfg = channel == Channel::free ? PhysicalConfig{cfg.hbar, cfg.mass, cfg.a, cfg.b, 0.0} : cfg;
  const SpectralFunction fh = SpectralFunction::transform(cfg, phi.apply_H(hcfg), channel, quad);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const cplx e = cfg.h2m() * f.k()[i] * f.k()[i] * f.values()[i];
    num = std::max(num, std::abs(fh.values()[i] - e));
    den = std::max(den, std::abs(e));
  }
  out.diagonal = num / den;
  return out;
}

}  // namespace lscont
