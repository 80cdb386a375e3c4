#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace lscont {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Which Lippmann-Schwinger boundary condition: "in" (+) or "out" (-).
enum class Sign { plus, minus };

inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline const char* to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

enum class ErrorKind {
  invalid_argument,
  degenerate,         // q = 0, the regular solution vanishes identically
  at_pole,            // evaluation at (or within guard distance of) a Jost zero
  not_a_pole,         // residue requested where the Jost function does not vanish
  unsupported_order,  // higher-order zero detected
  zero_on_boundary,   // argument principle contour passes through a zero
  non_convergence,
  divergent_norm,
  tail_budget,        // test-function falloff cannot tame the complex wave number
  domain,             // e.g. retarded propagator for t < 0
  pole_in_sector,
  ill_defined,
  singular_rescale,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<cplx> location = std::nullopt)
      : std::runtime_error(what), kind_(kind), location_(location) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Pole location for at_pole errors raised by the S-matrix.
  const std::optional<cplx>& location() const noexcept { return location_; }

 private:
  ErrorKind kind_;
  std::optional<cplx> location_;
};

/// Relative discrepancy |x - y| / max(|x|, |y|, floor).
inline double rel_diff(cplx x, cplx y, double floor = 1e-300) {
  const double scale = std::max({std::abs(x), std::abs(y), floor});
  return std::abs(x - y) / scale;
}

}  // namespace lscont
