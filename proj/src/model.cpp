#include "lscont/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lscont {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::at_pole: return "at-pole";
    case ErrorKind::not_a_pole: return "not-a-pole";
    case ErrorKind::unsupported_order: return "unsupported-order";
    case ErrorKind::zero_on_boundary: return "zero-on-boundary";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::divergent_norm: return "divergent-norm";
    case ErrorKind::tail_budget: return "tail-budget";
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole_in_sector: return "pole-in-sector";
    case ErrorKind::ill_defined: return "ill-defined";
    case ErrorKind::singular_rescale: return "singular-rescale";
  }
  return "unknown";
}

void PhysicalConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::invalid_argument, msg); };
  if (!(hbar > 0.0) || !std::isfinite(hbar)) fail("hbar must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass)) fail("mass must be positive");
  if (!(a > 0.0)) fail("shell inner radius a must be positive");
  if (!(b > a)) fail("shell outer radius b must exceed a");
  if (!std::isfinite(b) || !std::isfinite(v0)) fail("shell parameters must be finite");
}

PhysicalConfig parse_config(const std::string& text, PhysicalConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string{};
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::invalid_argument,
                  "config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    double x = 0.0;
    try {
      std::size_t used = 0;
      x = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_argument,
                  "config line " + std::to_string(lineno) + ": bad number '" + val + "'");
    }
    if (key == "hbar") base.hbar = x;
    else if (key == "mass") base.mass = x;
    else if (key == "a") base.a = x;
    else if (key == "b") base.b = x;
    else if (key == "v0") base.v0 = x;
    else
      throw Error(ErrorKind::invalid_argument,
                  "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return base;
}

PhysicalConfig load_config(const std::string& path, PhysicalConfig base) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::invalid_argument, "cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), base);
}

cplx wavenumber_from_energy(const PhysicalConfig& cfg, const SheetPoint& p) {
  cplx q = std::sqrt(p.z / cfg.h2m());
  const bool upper = q.imag() > 0.0 || (q.imag() == 0.0 && q.real() >= 0.0);
  if (p.sheet == Sheet::I ? !upper : upper) q = -q;
  if (q == cplx{}) return {};  // avoid -0 components at the branch point
  return q;
}

SheetPoint energy_from_wavenumber(const PhysicalConfig& cfg, cplx q) {
  const bool upper = q.imag() > 0.0 || (q.imag() == 0.0 && q.real() >= 0.0);
  return {cfg.h2m() * q * q, upper ? Sheet::I : Sheet::II};
}

cplx kappa(const PhysicalConfig& cfg, cplx q) {
  if (cfg.v0 == 0.0) return q;
  return std::sqrt(q * q - cfg.barrier_k2());
}

cplx energy_rep_rescale(const PhysicalConfig& cfg, cplx q, cplx value, RescaleDirection dir) {
  if (q == cplx{})
    throw Error(ErrorKind::singular_rescale, "energy rescale is singular at q = 0");
  const cplx factor = std::sqrt(1.0 / (cfg.h2m() * 2.0 * q));
  return dir == RescaleDirection::wave_to_energy ? value * factor : value / factor;
}

}  // namespace lscont
