#pragma once

#include <functional>
#include <vector>

#include "lscont/jost.hpp"

namespace lscont {

struct Rect {
  double re_min, re_max, im_min, im_max;
  bool contains(cplx q, double slack = 0.0) const {
    return q.real() >= re_min - slack && q.real() <= re_max + slack && q.imag() >= im_min - slack &&
           q.imag() <= im_max + slack;
  }
  std::vector<cplx> corners() const {
    return {{re_min, im_min}, {re_max, im_min}, {re_max, im_max}, {re_min, im_max}};
  }
};

struct JostZero {
  cplx q0;
  double jost_residual;  // |J(q0)|
  cplx derivative;       // J'(q0)
};

struct PoleSet {
  std::vector<JostZero> zeros;  // sorted by Re, then Im
  Rect rectangle;
  Sign sign;
};

/// Winding number of f around the closed polygon (last vertex joins the first),
/// by adaptive phase tracking with phase steps of at most pi/4. Throws
/// zero_on_boundary when f gets within `zero_tol` of zero on the boundary
/// (or the tracking cannot resolve the phase above the minimal step).
int winding_number(const std::function<cplx(cplx)>& f, const std::vector<cplx>& polygon,
                   const std::function<double(cplx)>& zero_tol);

/// Number of zeros of J+- inside the rectangle.
int count_zeros(const PhysicalConfig& cfg, const Rect& rect, Sign sign);

struct PoleSearchOptions {
  double newton_tol = 1e-12;  // relative step size at which Newton stops
  int max_depth = 24;
};

/// All zeros of J+- inside the rectangle, by subdivision until each cell
/// winds at most once, then Newton with the closed-form derivative.
PoleSet find_resonances(const PhysicalConfig& cfg, const Rect& rect, Sign sign,
                        const PoleSearchOptions& opt = {});

}  // namespace lscont
