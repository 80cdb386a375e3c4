#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "lscont/common.hpp"

namespace lscont {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x, w;
};

/// Cached n-point rule (nodes by Newton iteration on the Legendre recurrence).
const GaussRule& gauss_rule(int n);

/// A flat list of nodes and weights.
struct NodeSet {
  std::vector<double> x, w;
  void append(double lo, double hi, const GaussRule& g) {
    const double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      x.push_back(m + h * g.x[i]);
      w.push_back(h * g.w[i]);
    }
  }
  std::size_t size() const { return x.size(); }
};

/// Composite rule over [lo, hi]: every interval between consecutive breaks is
/// split into panels no wider than `max_panel`, each carrying an `order`-point rule.
NodeSet composite_rule(std::vector<double> breaks, double max_panel, int order);

/// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
struct KronrodPair {
  static constexpr int n = 15;
  double xk[15];
  double wk[15];
  double wg[15];  // zero at the Kronrod-only nodes
};
const KronrodPair& kronrod15();

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
};

/// Single G7/K15 panel: Kronrod value and |K - G| as error estimate.
template <class F>
auto gk15(F&& f, double lo, double hi) {
  using T = decltype(f(lo));
  const KronrodPair& k = kronrod15();
  const double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
  T sk{}, sg{};
  for (int i = 0; i < KronrodPair::n; ++i) {
    const T y = f(m + h * k.xk[i]);
    sk += k.wk[i] * y;
    sg += k.wg[i] * y;
  }
  QuadResult<T> r;
  r.value = h * sk;
  r.error = std::abs(h * (sk - sg));
  r.evaluations = KronrodPair::n;
  return r;
}

/// Globally adaptive G7/K15 integration over [lo, hi] with optional interior
/// breakpoints. Stops when the summed error estimate is below
/// max(abs_tol, rel_tol |value|) or after `max_panels` panels.
template <class F>
auto integrate_adaptive(F&& f, std::vector<double> breaks, double abs_tol, double rel_tol,
                        int max_panels = 4000) {
  using T = decltype(f(breaks.front()));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  struct Panel {
    double lo, hi;
    QuadResult<T> r;
    bool operator<(const Panel& o) const { return r.error < o.r.error; }
  };
  std::priority_queue<Panel> heap;
  T total{};
  double err = 0.0;
  int evals = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto r = gk15(f, breaks[i], breaks[i + 1]);
    total += r.value;
    err += r.error;
    evals += r.evaluations;
    heap.push({breaks[i], breaks[i + 1], r});
  }
  while (!heap.empty() && err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         int(heap.size()) < max_panels) {
    Panel p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(mid > p.lo && mid < p.hi)) break;  // panel collapsed to rounding
    auto left = gk15(f, p.lo, mid);
    auto right = gk15(f, mid, p.hi);
    total += left.value + right.value - p.r.value;
    err += left.error + right.error - p.r.error;
    evals += left.evaluations + right.evaluations;
    heap.push({p.lo, mid, left});
    heap.push({mid, p.hi, right});
  }
  // recompute the error sum to shed accumulated rounding from the updates
  double e2 = 0.0;
  T t2{};
  while (!heap.empty()) {
    e2 += heap.top().r.error;
    t2 += heap.top().r.value;
    heap.pop();
  }
  QuadResult<T> out;
  out.value = t2;
  out.error = e2;
  out.evaluations = evals;
  return out;
}

}  // namespace lscont
