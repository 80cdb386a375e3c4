#pragma once

#include <map>
#include <string>

#include "lscont/common.hpp"

namespace lscont {

/// Units and spherical-shell geometry. V(r) = v0 on (a, b), zero elsewhere.
struct PhysicalConfig {
  double hbar = 1.0;
  double mass = 0.5;
  double a = 1.0;
  double b = 2.0;
  double v0 = 10.0;

  /// hbar^2 / (2 m); equals 1 in the default units.
  double h2m() const { return hbar * hbar / (2.0 * mass); }
  /// 2 m V0 / hbar^2, the squared threshold wave number of the barrier.
  double barrier_k2() const { return v0 / h2m(); }
  double potential(double r) const { return (r > a && r < b) ? v0 : 0.0; }

  /// Throws ErrorKind::invalid_argument unless 0 < a < b, hbar > 0, mass > 0.
  void validate() const;

  /// a = 1, b = 2, V0 = 10 with hbar^2/2m = 1.
  static PhysicalConfig canonical() { return {}; }
  static PhysicalConfig free_particle() {
    PhysicalConfig c;
    c.v0 = 0.0;
    return c;
  }
};

/// Reads `key = value` lines (keys hbar, mass, a, b, v0; `#` starts a comment)
/// on top of `base`. Unknown keys are rejected.
PhysicalConfig load_config(const std::string& path, PhysicalConfig base = {});
PhysicalConfig parse_config(const std::string& text, PhysicalConfig base = {});

enum class Sheet { I, II };

/// A point of the two-sheeted energy surface.
struct SheetPoint {
  cplx z;
  Sheet sheet;
};

/// q with q^2 = 2 m z / hbar^2. Sheet I lands in Im q >= 0 (real z > 0 on the
/// upper rim gives q = k > 0), sheet II in Im q <= 0 (real z > 0 gives q = -k).
cplx wavenumber_from_energy(const PhysicalConfig& cfg, const SheetPoint& p);

/// z = hbar^2 q^2 / (2m). Im q > 0 tags sheet I, Im q < 0 sheet II; on the real
/// axis Re q >= 0 is sheet I and Re q < 0 sheet II.
SheetPoint energy_from_wavenumber(const PhysicalConfig& cfg, cplx q);

/// kappa = sqrt(q^2 - 2 m V0 / hbar^2), principal branch (kappa = q when V0 = 0).
cplx kappa(const PhysicalConfig& cfg, cplx q);

enum class RescaleDirection {
  wave_to_energy,  // bras and kets: |z> = sqrt(2m/hbar^2 / (2q)) |q>
  energy_to_wave,  // wave functions: f(k) = sqrt(hbar^2/2m * 2k) f(E)
};

/// Converts a wave-number representation value to the energy representation
/// (or back). Throws singular_rescale at q = 0.
cplx energy_rep_rescale(const PhysicalConfig& cfg, cplx q, cplx value, RescaleDirection dir);

}  // namespace lscont
