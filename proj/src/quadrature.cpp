#include "lscont/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace lscont {

namespace {

GaussRule build_gauss(int n) {
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    g.w[i] = g.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.x[n / 2] = 0.0;
  return g;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_gauss(n));
  return *slot;
}

NodeSet composite_rule(std::vector<double> breaks, double max_panel, int order) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const GaussRule& g = gauss_rule(order);
  NodeSet out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    if (!(hi > lo)) continue;
    const int panels = std::max(1, int(std::ceil((hi - lo) / max_panel)));
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) out.append(lo + p * h, (p + 1 == panels) ? hi : lo + (p + 1) * h, g);
  }
  return out;
}

const KronrodPair& kronrod15() {
  static const KronrodPair k = [] {
    // QUADPACK qk15 abscissae and weights
    const double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    const double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    const double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    KronrodPair p{};
    for (int i = 0; i < 7; ++i) {
      p.xk[i] = -xgk[i];
      p.xk[14 - i] = xgk[i];
      p.wk[i] = p.wk[14 - i] = wgk[i];
      // Gauss nodes are the odd-indexed Kronrod abscissae
      p.wg[i] = p.wg[14 - i] = (i % 2 == 1) ? wg[i / 2] : 0.0;
    }
    p.xk[7] = 0.0;
    p.wk[7] = wgk[7];
    p.wg[7] = wg[3];
    return p;
  }();
  return k;
}

}  // namespace lscont
