#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lscont/poles.hpp"
#include "lscont/transforms.hpp"

namespace lscont::cli {

enum class Command { jost, eigfn, poles, transform, continue_, evolve, verify };
const char* to_string(Command c);

/// lo:hi:step, inclusive of hi up to rounding.
struct Grid {
  double lo = 0.0, hi = 0.0, step = 1.0;
  std::vector<double> points() const;
};
/// Throws lscont::Error(invalid_argument) on malformed text or step <= 0 or hi < lo.
Grid parse_grid(const std::string& text);
/// "re,im" or a plain real number.
cplx parse_complex(const std::string& text);

enum class EvolveMode { group, retarded, advanced, free_retarded, free_advanced };

struct Invocation {
  Command command = Command::verify;
  PhysicalConfig config;
  QuadratureSpec quad;
  std::string output;  // empty: stdout

  // jost / eigfn / transform / continue / evolve grids
  Grid grid;
  Grid im_grid;
  double im = 0.0;
  cplx q;
  std::string sign = "+";  // "+", "-" and, for eigfn, "0"
  Channel channel = Channel::plus;
  Rect rect{0.1, 10.0, -3.0, -0.01};
  std::optional<TestFunction> phi;
  std::string kind = "bra";  // continue: bra or ket

  double t = 0.0;
  EvolveMode mode = EvolveMode::group;
  double eps = 0.2;

  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string json;
  bool no_timing = false;
};

struct Parsed {
  std::optional<Invocation> invocation;
  int exit_code = 0;  // meaningful when there is no invocation (help: 0, usage error: 2)
};

/// Parses and validates everything (config, grids, test function) before any
/// computation. Help and usage errors are written to out/err.
Parsed parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 0 on success, 1 on a computation failure (diagnostic on err).
int run(const Invocation& inv, std::ostream& out, std::ostream& err);

/// parse + run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal.
std::string format_double(double x);

}  // namespace lscont::cli
