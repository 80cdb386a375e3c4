#include "lscont/testspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lscont/quadrature.hpp"

namespace lscont {

namespace {

constexpr double kUnderflow = 700.0;

inline double val(double x) { return x; }
inline double val(const RJet& x) { return x.c[0]; }

template <class T>
T constant(double v) {
  if constexpr (std::is_same_v<T, double>) return v;
  else return T::constant(v);
}

template <class T>
T ipow(const T& x, int n) {
  T r = constant<T>(1.0);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

using std::exp;

template <class T>
T smooth_step(const T& x) {
  // 0 at x = 0, 1 for |x| >= 1, all derivatives vanish at both ends
  const double x0 = val(x);
  const T t = x0 < 0 ? -x : x;
  const double t0 = std::abs(x0);
  if (t0 >= 1.0 || 1.0 / (1.0 - t0) > kUnderflow) return constant<T>(1.0);
  if (t0 <= 0.0 || 1.0 / t0 > kUnderflow) return constant<T>(0.0);
  const T pa = exp(-1.0 / t);
  const T pb = exp(-1.0 / (1.0 - t));
  return pa / (pa + pb);
}

struct Bump {
  double lo, hi;
  int degree;
  template <class T>
  T operator()(const T& r) const {
    const T x = (2.0 * r - (lo + hi)) * (1.0 / (hi - lo));
    const double x0 = val(x);
    if (std::abs(x0) >= 1.0) return constant<T>(0.0);
    const T t = 1.0 - x * x;
    if (1.0 / val(t) > kUnderflow) return constant<T>(0.0);
    return exp(-1.0 / t) * ipow(1.0 + x, degree);
  }
};

struct GaussDamped {
  double a, b, c, delta;
  int degree;
  template <class T>
  T operator()(const T& r) const {
    if (val(r) < 0.0) return constant<T>(0.0);
    const T ra = r - a, rb = r - b;
    const T poly = ipow(1.0 + r, degree) * r * r * ra * ra * rb * rb;
    const T flat = smooth_step(r * (1.0 / delta)) * smooth_step(ra * (1.0 / delta)) *
                   smooth_step(rb * (1.0 / delta));
    return poly * exp(-c * (r * r)) * flat;
  }
};

template <class F>
class Body final : public FunctionBody {
 public:
  explicit Body(F f) : f_(f) {}
  double value(double r) const override { return f_(r); }
  RJet jet(double r) const override { return f_(RJet::variable(r)); }

 private:
  F f_;
};

// alpha phi - hbar^2/2m phi'' + V phi, applied `power` times on jets
class HBody final : public FunctionBody {
 public:
  HBody(std::shared_ptr<const FunctionBody> inner, PhysicalConfig cfg, double alpha, int power)
      : inner_(std::move(inner)), cfg_(cfg), alpha_(alpha), power_(power) {}
  double value(double r) const override { return jet(r).c[0]; }
  RJet jet(double r) const override {
    RJet j = inner_->jet(r);
    const double v = cfg_.potential(r);
    for (int i = 0; i < power_; ++i) j = (alpha_ + v) * j - cfg_.h2m() * j.differentiate().differentiate();
    return j;
  }
  int order() const override { return inner_->order() - 2 * power_; }

 private:
  std::shared_ptr<const FunctionBody> inner_;
  PhysicalConfig cfg_;
  double alpha_;
  int power_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

}  // namespace

TestFunction::TestFunction(std::shared_ptr<const FunctionBody> body, std::vector<Interval> support,
                           std::string label, double gauss_rate)
    : body_(std::move(body)), support_(std::move(support)), label_(std::move(label)), gauss_rate_(gauss_rate) {
  if (support_.empty()) throw Error(ErrorKind::invalid_argument, "test function needs a support");
}

double TestFunction::derivative(double r, int k) const {
  if (k == 0) return value(r);
  if (k > jet_order())
    throw Error(ErrorKind::invalid_argument, "derivative order exceeds the available jet of " + label_);
  return jet(r).derivative(k);
}

TestFunction TestFunction::apply_H(const PhysicalConfig& cfg) const { return one_plus_H_power(cfg, 1, 0.0); }

TestFunction TestFunction::one_plus_H_power(const PhysicalConfig& cfg, int n) const {
  return one_plus_H_power(cfg, n, 1.0);
}

TestFunction TestFunction::one_plus_H_power(const PhysicalConfig& cfg, int n, double alpha) const {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "negative operator power");
  if (jet_order() - 2 * n < 0) throw Error(ErrorKind::invalid_argument, "jet order exhausted for " + label_);
  const std::string op = alpha == 0.0 ? "H" : "(1+H)";
  std::string label = n == 1 ? op + "(" + label_ + ")" : op + "^" + std::to_string(n) + "(" + label_ + ")";
  TestFunction out(std::make_shared<HBody>(body_, cfg, alpha, n), support_, label, gauss_rate_);
  out.tail_r0 = tail_r0;
  out.tail_m = 0.0;  // not tracked for derived functions
  return out;
}

TestFunction bump(double lo, double hi, int degree) {
  if (!(hi > lo) || lo < 0.0) throw Error(ErrorKind::invalid_argument, "bump needs 0 <= lo < hi");
  if (degree < 0) throw Error(ErrorKind::invalid_argument, "negative polynomial degree");
  std::string label = "bump:" + fmt(lo) + "," + fmt(hi);
  if (degree > 0) label += "," + std::to_string(degree);
  TestFunction f(std::make_shared<Body<Bump>>(Bump{lo, hi, degree}), {{lo, hi}}, label);
  f.tail_r0 = hi;
  f.tail_m = 0.0;
  return f;
}

TestFunction gauss_damped(const PhysicalConfig& cfg, int degree, double c, double delta) {
  if (c < 2.0) throw Error(ErrorKind::invalid_argument, "Gaussian rate c must be >= 2");
  if (degree < 0) throw Error(ErrorKind::invalid_argument, "negative polynomial degree");
  if (delta <= 0.0) delta = 0.05 * cfg.a;
  const GaussDamped g{cfg.a, cfg.b, c, delta, degree};
  // numerical end of support: below 1e-30 of the maximum
  double peak = 0.0;
  for (double r = 0.0; r < cfg.b + 10.0; r += 0.01) peak = std::max(peak, std::abs(g(r)));
  double r_end = cfg.b + 0.5;
  while (std::abs(g(r_end)) > 1e-30 * peak || r_end < std::sqrt(69.0 / c)) r_end += 0.05;
  std::string label = "gauss:deg=" + std::to_string(degree) + ",c=" + fmt(c) + ",delta=" + fmt(delta);
  TestFunction f(std::make_shared<Body<GaussDamped>>(g), {{0.0, cfg.a}, {cfg.a, cfg.b}, {cfg.b, r_end}}, label,
                 c);
  f.tail_r0 = cfg.b + 1.0;
  double m = 0.0;
  for (double r = f.tail_r0; r <= r_end + 5.0; r += 0.01) m = std::max(m, std::abs(g(r)) * std::exp(r * r));
  f.tail_m = 1.01 * m;
  return f;
}

TestFunction parse_test_function(const PhysicalConfig& cfg, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorKind::invalid_argument, "test function spec must look like bump:lo,hi or gauss:deg=..,c=..");
  const std::string kind = spec.substr(0, colon);
  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(colon + 1));
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_argument, "bad number '" + s + "' in " + spec);
    }
  };
  if (kind == "bump") {
    if (parts.size() < 2 || parts.size() > 3) throw Error(ErrorKind::invalid_argument, "bump:lo,hi[,deg]");
    return bump(number(parts[0]), number(parts[1]), parts.size() == 3 ? int(number(parts[2])) : 0);
  }
  if (kind == "gauss") {
    int deg = 0;
    double c = 2.0, delta = -1.0;
    for (const auto& p : parts) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::invalid_argument, "gauss options are key=value");
      const std::string key = p.substr(0, eq);
      const double x = number(p.substr(eq + 1));
      if (key == "deg") deg = int(x);
      else if (key == "c") c = x;
      else if (key == "delta") delta = x;
      else throw Error(ErrorKind::invalid_argument, "unknown gauss option '" + key + "'");
    }
    return gauss_damped(cfg, deg, c, delta);
  }
  throw Error(ErrorKind::invalid_argument, "unknown test function kind '" + kind + "'");
}

std::vector<TestFunction> standard_family(const PhysicalConfig& cfg) {
  const double a = cfg.a, b = cfg.b;
  return {bump(b, b + 4 * (b - a)), bump(b + 0.5 * (b - a), b + 5 * (b - a), 1),
          bump(b + (b - a), b + 6 * (b - a), 2), gauss_damped(cfg, 1, 2.0, a)};
}

namespace {

std::vector<double> breaks_for(const PhysicalConfig& cfg, const TestFunction& phi, double r_end) {
  std::vector<double> br{phi.support_begin(), r_end};
  for (const Interval& iv : phi.support()) {
    br.push_back(iv.lo);
    br.push_back(iv.hi);
  }
  for (double x : {cfg.a, cfg.b})
    if (x > br.front() && x < r_end) br.push_back(x);
  std::vector<double> out;
  for (double x : br)
    if (x >= phi.support_begin() && x <= r_end) out.push_back(x);
  return out;
}

}  // namespace

double norm_nnprime(const PhysicalConfig& cfg, const TestFunction& phi, int n, int nprime) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "norm index n must be >= 1");
  if (nprime < 0) throw Error(ErrorKind::invalid_argument, "norm index n' must be >= 0");
  double r_end = phi.support_end();
  if (!phi.compact()) {
    const double budget = 2.0 * phi.gauss_rate() - n;
    if (budget <= 0.5)
      throw Error(ErrorKind::divergent_norm, "weight e^{n r^2/2} outgrows the Gaussian tail of " + phi.label());
    r_end = std::max(cfg.b + 1.0, std::sqrt(90.0 / budget));
  }
  const TestFunction g = nprime == 0 ? phi : phi.one_plus_H_power(cfg, nprime);
  auto integrand = [&](double r) {
    const double w = n * r / (1.0 + n * r) * std::exp(0.5 * n * r * r);
    const double y = w * g.value(r);
    return y * y;
  };
  const auto res = integrate_adaptive(integrand, breaks_for(cfg, phi, r_end), 0.0, 1e-12);
  return std::sqrt(res.value);
}

double l2_norm(const TestFunction& phi) {
  std::vector<double> br;
  for (const Interval& iv : phi.support()) {
    br.push_back(iv.lo);
    br.push_back(iv.hi);
  }
  const auto res = integrate_adaptive([&](double r) { return phi.value(r) * phi.value(r); }, br, 0.0, 1e-13);
  return std::sqrt(res.value);
}

}  // namespace lscont
