#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lscont/continuation.hpp"
#include "lscont/eigenfunctions.hpp"
#include "lscont/propagators.hpp"
#include "lscont/verify.hpp"

namespace lscont::cli {

const char* to_string(Command c) {
  switch (c) {
    case Command::jost: return "jost";
    case Command::eigfn: return "eigfn";
    case Command::poles: return "poles";
    case Command::transform: return "transform";
    case Command::continue_: return "continue";
    case Command::evolve: return "evolve";
    case Command::verify: return "verify";
  }
  return "?";
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

namespace {

double to_double(const std::string& s, const std::string& what) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  const char* b = s.data();
  if (b != end && *b == '+') ++b;
  const auto r = std::from_chars(b, end, x);
  if (r.ec != std::errc{} || r.ptr != end)
    throw Error(ErrorKind::invalid_argument, "cannot read '" + s + "' as a number in " + what);
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> p;
  const long n = long(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) p.push_back(lo + double(i) * step);
  return p;
}

Grid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw Error(ErrorKind::invalid_argument, "grid '" + text + "' must look like lo:hi:step");
  Grid g{to_double(parts[0], "grid"), to_double(parts[1], "grid"), to_double(parts[2], "grid")};
  if (!(g.step > 0.0) || !(g.hi >= g.lo) || !std::isfinite(g.hi) || !std::isfinite(g.lo))
    throw Error(ErrorKind::invalid_argument, "grid '" + text + "' needs step > 0 and hi >= lo");
  if ((g.hi - g.lo) / g.step > 1e7) throw Error(ErrorKind::invalid_argument, "grid '" + text + "' has too many points");
  return g;
}

cplx parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return to_double(parts[0], "complex number");
  if (parts.size() == 2) return {to_double(parts[0], "complex number"), to_double(parts[1], "complex number")};
  throw Error(ErrorKind::invalid_argument, "complex number '" + text + "' must look like re,im");
}

namespace {

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  throw Error(ErrorKind::invalid_argument, "sign must be + or -");
}

EvolveMode parse_mode(const std::string& s) {
  if (s == "group") return EvolveMode::group;
  if (s == "retarded") return EvolveMode::retarded;
  if (s == "advanced") return EvolveMode::advanced;
  if (s == "free-retarded") return EvolveMode::free_retarded;
  if (s == "free-advanced") return EvolveMode::free_advanced;
  throw Error(ErrorKind::invalid_argument, "mode must be group, retarded, advanced, free-retarded or free-advanced");
}

Rect parse_rect(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(ErrorKind::invalid_argument, "rectangle must look like re_min,re_max,im_min,im_max");
  Rect r{to_double(parts[0], "rect"), to_double(parts[1], "rect"), to_double(parts[2], "rect"),
         to_double(parts[3], "rect")};
  if (!(r.re_max > r.re_min) || !(r.im_max > r.im_min))
    throw Error(ErrorKind::invalid_argument, "rectangle needs re_min < re_max and im_min < im_max");
  return r;
}

class Csv {
 public:
  Csv(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out_ << (i ? "," : "") << format_double(v[i]);
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

// Raw option text, validated after CLI11 is done so that errors map to exit code 2.
struct RawOptions {
  std::string config_path;
  double hbar = 0, mass = 0, a = 0, b = 0, v0 = 0;
  CLI::Option *o_hbar = nullptr, *o_mass = nullptr, *o_a = nullptr, *o_b = nullptr, *o_v0 = nullptr;
  double kmax = 0, quad_rmax = 0;
  int order = 0;
  CLI::Option *o_kmax = nullptr, *o_quad_rmax = nullptr, *o_order = nullptr;

  std::string grid, im_grid, q, sign, channel, rect, phi, kind, mode, suite = "all", json, out;
  double im = 0, t = 0, eps = 0.2, rmax = 0, rstep = 0;
  CLI::Option *o_t = nullptr, *o_rmax = nullptr, *o_rstep = nullptr;
  std::uint64_t seed = kDefaultSeed;
  bool no_timing = false;
};

const char* kOverview =
    "Analytic continuation of Lippmann-Schwinger solutions for the spherical shell V(r) = v0 on (a, b).\n"
    "Defaults: hbar = 1, mass = 0.5, a = 1, b = 2, v0 = 10. Physics flags override --config.\n"
    "Exit codes: 0 success, 1 computation failure, 2 usage error.";

}  // namespace

Parsed parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{kOverview, "lscont"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  RawOptions o;

  app.add_option("--config", o.config_path, "key = value file with hbar, mass, a, b, v0");
  o.o_hbar = app.add_option("--hbar", o.hbar, "reduced Planck constant");
  o.o_mass = app.add_option("--mass", o.mass, "particle mass");
  o.o_a = app.add_option("--a", o.a, "inner radius of the shell");
  o.o_b = app.add_option("--b", o.b, "outer radius of the shell");
  o.o_v0 = app.add_option("--v0", o.v0, "barrier height");
  o.o_kmax = app.add_option("--kmax", o.kmax, "spectral cutoff in units of 1/a (default 120)");
  o.o_quad_rmax = app.add_option("--quad-rmax", o.quad_rmax, "radial truncation in units of a (default 12)");
  o.o_order = app.add_option("--quad-order", o.order, "Gauss-Legendre points per panel (default 20)");

  auto* jost = app.add_subcommand("jost", "J+(k), J-(k) and S(k) along a line Im k = const, as CSV");
  jost->add_option("--grid", o.grid, "lo:hi:step for Re k")->required();
  jost->add_option("--im", o.im, "constant imaginary part (default 0)");
  jost->add_option("--out", o.out, "output file (default stdout)");
  jost->footer("Example:\n  lscont jost --grid 0.1:20:0.1 > jost.csv");

  auto* eigfn = app.add_subcommand("eigfn", "chi+-(r;q) or chi0(r;q) on an r-grid, as CSV");
  eigfn->add_option("--q", o.q, "wave number re,im")->required();
  eigfn->add_option("--sign", o.sign, "+, - or 0 (free)")->default_str("+");
  eigfn->add_option("--grid", o.grid, "lo:hi:step for r")->required();
  eigfn->add_option("--out", o.out, "output file (default stdout)");
  eigfn->footer("Example:\n  lscont eigfn --q 2.5,-0.3 --sign + --grid 0:10:0.05");

  auto* poles = app.add_subcommand("poles", "zeros of J+ or J- in a rectangle, as JSON");
  poles->add_option("--rect", o.rect, "re_min,re_max,im_min,im_max (default 0.1,10,-3,-0.01)");
  poles->add_option("--sign", o.sign, "+ for J+, - for J-")->default_str("+");
  poles->add_option("--out", o.out, "output file (default stdout)");
  poles->footer("Example:\n  lscont poles --rect 0.1,10,-3,-0.01");

  auto* transform = app.add_subcommand("transform", "F(phi)(k) for one channel, as CSV");
  transform->add_option("--phi", o.phi, "test function: bump:lo,hi[,deg] or gauss:deg=D,c=C[,delta=W]");
  transform->add_option("--channel", o.channel, "plus, minus or free")->default_str("plus");
  transform->add_option("--grid", o.grid, "lo:hi:step for k (default 0.1:20:0.1)");
  transform->add_option("--out", o.out, "output file (default stdout)");
  transform->footer("Example:\n  lscont transform --phi bump:2,6 --channel minus --grid 0.1:20:0.1");

  auto* cont = app.add_subcommand("continue", "bra or ket functional of phi over a complex q grid, as CSV");
  cont->add_option("--phi", o.phi, "test function (default: first member of the verification family)");
  cont->add_option("--sign", o.sign, "+ or -")->default_str("+");
  cont->add_option("--kind", o.kind, "bra or ket")->default_str("bra");
  cont->add_option("--re", o.grid, "lo:hi:step for Re q")->required();
  cont->add_option("--im", o.im_grid, "lo:hi:step for Im q")->required();
  cont->add_option("--out", o.out, "output file (default stdout)");
  cont->footer("Example:\n  lscont continue --phi bump:2,6 --re 0.5:6:0.5 --im -1:1:0.25");

  auto* evolve = app.add_subcommand("evolve", "time evolution of phi on an r-grid, as CSV");
  o.o_t = evolve->add_option("--t", o.t, "time")->required();
  evolve->add_option("--mode", o.mode, "group, retarded, advanced, free-retarded or free-advanced")
      ->default_str("group");
  evolve->add_option("--eps", o.eps, "contour angle for the contour modes (default 0.2)");
  evolve->add_option("--phi", o.phi, "test function (default: first member of the verification family)");
  evolve->add_option("--sign", o.sign, "+ or - for retarded/advanced")->default_str("+");
  o.o_rmax = evolve->add_option("--rmax", o.rmax, "last radius of the output grid (default 5 b)");
  o.o_rstep = evolve->add_option("--rstep", o.rstep, "output grid step (default b / 40)");
  evolve->add_option("--out", o.out, "output CSV (default stdout)");
  evolve->footer("Example:\n  lscont evolve --t 0.5 --mode retarded --phi bump:2,6 --out psi.csv");

  auto* verify = app.add_subcommand("verify", "run the verification suites; exit 0 iff nothing fails");
  verify->add_option("--suite", o.suite, "all or one suite name");
  verify->add_option("--seed", o.seed, "seed of the randomized samples");
  verify->add_option("--json", o.json, "write the report as JSON here");
  verify->add_option("--out", o.out, "write the table here (default stdout)");
  verify->add_flag("--no-timing", o.no_timing, "write runtime 0 in the JSON, for byte-stable files");
  std::string suites = "Suites:";
  for (const std::string& s : suite_names()) suites += " " + s;
  verify->footer(suites + "\nExample:\n  lscont verify --suite prop4 --json prop4.json");

  app.footer(
      "Examples:\n"
      "  lscont jost --grid 0.1:20:0.1\n"
      "  lscont eigfn --q 2.5,-0.3 --grid 0:10:0.05\n"
      "  lscont poles --rect 0.1,10,-3,-0.01\n"
      "  lscont transform --phi bump:2,6 --channel plus\n"
      "  lscont continue --phi bump:2,6 --re 0.5:6:0.5 --im -1:1:0.25\n"
      "  lscont evolve --t 0.5 --mode retarded --out psi.csv\n"
      "  lscont verify --json report.json\n"
      "  lscont --config shell.cfg --v0 20 poles");

  if (argc <= 1) {
    out << app.help();
    return {std::nullopt, 2};
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? 0 : 2};
  }

  Invocation inv;
  try {
    PhysicalConfig cfg;
    if (!o.config_path.empty()) cfg = load_config(o.config_path);
    if (o.o_hbar->count()) cfg.hbar = o.hbar;
    if (o.o_mass->count()) cfg.mass = o.mass;
    if (o.o_a->count()) cfg.a = o.a;
    if (o.o_b->count()) cfg.b = o.b;
    if (o.o_v0->count()) cfg.v0 = o.v0;
    cfg.validate();
    inv.config = cfg;
    if (o.o_kmax->count()) inv.quad.k_max = o.kmax;
    if (o.o_quad_rmax->count()) inv.quad.r_max = o.quad_rmax;
    if (o.o_order->count()) inv.quad.order = o.order;
    inv.quad.validate();
    inv.output = o.out;

    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (!o.phi.empty()) inv.phi = parse_test_function(cfg, o.phi);
    if (name == "jost") {
      inv.command = Command::jost;
      inv.grid = parse_grid(o.grid);
      inv.im = o.im;
    } else if (name == "eigfn") {
      inv.command = Command::eigfn;
      inv.q = parse_complex(o.q);
      inv.sign = o.sign.empty() ? "+" : o.sign;
      if (inv.sign != "0") parse_sign(inv.sign);
      inv.grid = parse_grid(o.grid);
    } else if (name == "poles") {
      inv.command = Command::poles;
      if (!o.rect.empty()) inv.rect = parse_rect(o.rect);
      inv.sign = o.sign.empty() ? "+" : o.sign;
      parse_sign(inv.sign);
    } else if (name == "transform") {
      inv.command = Command::transform;
      inv.channel = parse_channel(o.channel.empty() ? "plus" : o.channel);
      inv.grid = parse_grid(o.grid.empty() ? "0.1:20:0.1" : o.grid);
      if (!(inv.grid.lo > 0.0)) throw Error(ErrorKind::invalid_argument, "transform grid must start at k > 0");
    } else if (name == "continue") {
      inv.command = Command::continue_;
      inv.sign = o.sign.empty() ? "+" : o.sign;
      parse_sign(inv.sign);
      inv.kind = o.kind.empty() ? "bra" : o.kind;
      if (inv.kind != "bra" && inv.kind != "ket") throw Error(ErrorKind::invalid_argument, "kind must be bra or ket");
      inv.grid = parse_grid(o.grid);
      inv.im_grid = parse_grid(o.im_grid);
    } else if (name == "evolve") {
      inv.command = Command::evolve;
      inv.t = o.t;
      inv.mode = parse_mode(o.mode.empty() ? "group" : o.mode);
      inv.eps = o.eps;
      if (!(o.eps > 0.0 && o.eps < kPi / 2)) throw Error(ErrorKind::invalid_argument, "eps must lie in (0, pi/2)");
      inv.sign = o.sign.empty() ? "+" : o.sign;
      parse_sign(inv.sign);
      const double rmax = o.o_rmax->count() ? o.rmax : 5.0 * cfg.b;
      const double rstep = o.o_rstep->count() ? o.rstep : cfg.b / 40.0;
      if (!(rmax > 0.0) || !(rstep > 0.0)) throw Error(ErrorKind::invalid_argument, "--rmax and --rstep must be positive");
      inv.grid = Grid{rstep, rmax, rstep};
      if (inv.grid.points().empty()) throw Error(ErrorKind::invalid_argument, "--rmax must be at least --rstep");
    } else {
      inv.command = Command::verify;
      inv.suite = o.suite;
      const auto& names = suite_names();
      if (inv.suite != "all" && std::find(names.begin(), names.end(), inv.suite) == names.end())
        throw Error(ErrorKind::invalid_argument, "unknown suite '" + inv.suite + "'");
      inv.seed = o.seed;
      inv.json = o.json;
      inv.no_timing = o.no_timing;
    }
  } catch (const Error& e) {
    err << "lscont: usage error: " << e.what() << "\nRun with --help for more information.\n";
    return {std::nullopt, 2};
  }
  return {std::move(inv), 0};
}

namespace {

TestFunction phi_or_default(const Invocation& inv) {
  return inv.phi ? *inv.phi : standard_family(inv.config)[0];
}

void run_jost(const Invocation& inv, std::ostream& out) {
  Csv csv(out, {"k_re", "k_im", "j_plus_re", "j_plus_im", "j_minus_re", "j_minus_im", "s_re", "s_im"});
  for (double re : inv.grid.points()) {
    const cplx k{re, inv.im};
    const JostPair j = jost_pm(inv.config, k);
    const cplx s = s_matrix(inv.config, k);
    csv.row({k.real(), k.imag(), j.plus.real(), j.plus.imag(), j.minus.real(), j.minus.imag(), s.real(), s.imag()});
  }
}

void run_eigfn(const Invocation& inv, std::ostream& out) {
  Csv csv(out, {"r", "chi_re", "chi_im"});
  std::optional<LSEigenfunction> f;
  if (inv.sign != "0") f.emplace(inv.config, inv.q, parse_sign(inv.sign));
  for (double r : inv.grid.points()) {
    const cplx v = f ? (*f)(r) : chi_zero(r, inv.q);
    csv.row({r, v.real(), v.imag()});
  }
}

void run_poles(const Invocation& inv, std::ostream& out) {
  const PoleSet p = find_resonances(inv.config, inv.rect, parse_sign(inv.sign));
  nlohmann::ordered_json j;
  j["sign"] = inv.sign == "plus" ? "+" : inv.sign == "minus" ? "-" : inv.sign;
  j["rectangle"] = {inv.rect.re_min, inv.rect.re_max, inv.rect.im_min, inv.rect.im_max};
  j["zeros"] = nlohmann::ordered_json::array();
  for (const JostZero& z : p.zeros) {
    nlohmann::ordered_json e;
    e["re"] = z.q0.real();
    e["im"] = z.q0.imag();
    e["deriv_re"] = z.derivative.real();
    e["deriv_im"] = z.derivative.imag();
    j["zeros"].push_back(e);
  }
  out << j.dump(2) << '\n';
}

void run_transform(const Invocation& inv, std::ostream& out) {
  const TestFunction phi = phi_or_default(inv);
  Csv csv(out, {"k", "f_re", "f_im"});
  for (double k : inv.grid.points()) {
    const cplx f = forward(inv.config, phi, inv.channel, k, inv.quad);
    csv.row({k, f.real(), f.imag()});
  }
}

void run_continue(const Invocation& inv, std::ostream& out) {
  const TestFunction phi = phi_or_default(inv);
  const Sign s = parse_sign(inv.sign);
  Csv csv(out, {"q_re", "q_im", "braval_re", "braval_im", "quad_err"});
  for (double im : inv.im_grid.points())
    for (double re : inv.grid.points()) {
      const cplx q{re, im};
      const FunctionalValue v =
          inv.kind == "bra" ? bra_eval(inv.config, q, phi, s, inv.quad) : ket_eval(inv.config, q, phi, s, inv.quad);
      csv.row({re, im, v.value.real(), v.value.imag(), v.quad_error});
    }
}

void run_evolve(const Invocation& inv, std::ostream& out) {
  const TestFunction phi = phi_or_default(inv);
  const std::vector<double> r = inv.grid.points();
  EvolutionOptions opt;
  opt.eps = inv.eps;
  const Sign s = parse_sign(inv.sign);
  RadialField f;
  switch (inv.mode) {
    case EvolveMode::group: f = group_evolve(inv.config, phi, s == Sign::plus ? Channel::plus : Channel::minus, inv.t, r, inv.quad); break;
    case EvolveMode::retarded: f = retarded_evolve(inv.config, phi, s, inv.t, r, inv.quad, opt); break;
    case EvolveMode::advanced: f = advanced_evolve(inv.config, phi, s, inv.t, r, inv.quad, opt); break;
    case EvolveMode::free_retarded: f = free_retarded_evolve(inv.config, phi, inv.t, r, inv.quad, inv.eps); break;
    case EvolveMode::free_advanced: f = free_advanced_evolve(inv.config, phi, inv.t, r, inv.quad, inv.eps); break;
  }
  Csv csv(out, {"r", "re", "im", "t"});
  for (std::size_t i = 0; i < f.grid.size(); ++i) csv.row({f.grid[i], f.values[i].real(), f.values[i].imag(), f.t});
}

int run_verify(const Invocation& inv, std::ostream& out, std::ostream& err) {
  VerificationReport rep = run_all(inv.config, inv.suite, inv.seed, inv.quad);
  if (inv.no_timing)
    for (CheckEntry& e : rep.entries) e.runtime = 0.0;
  for (const CheckEntry& e : rep.entries) {
    out << e.check_id << "  " << to_string(e.status) << "  metric " << format_double(e.metric) << "  tol "
        << format_double(e.tolerance) << "  (" << e.note << ")\n";
  }
  out << rep.count(CheckStatus::pass) << " passed, " << rep.count(CheckStatus::fail) << " failed, "
      << rep.count(CheckStatus::skipped) << " skipped; seed " << rep.seed << '\n';
  if (!inv.json.empty()) {
    std::ofstream f(inv.json);
    if (!f) throw Error(ErrorKind::invalid_argument, "cannot write " + inv.json);
    f << report_json(rep);
  }
  if (!rep.passed()) {
    err << "lscont: " << rep.count(CheckStatus::fail) << " check(s) failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    std::ostream* dst = &out;
    if (!inv.output.empty()) {
      file.open(inv.output);
      if (!file) throw Error(ErrorKind::invalid_argument, "cannot write " + inv.output);
      dst = &file;
    }
    switch (inv.command) {
      case Command::jost: run_jost(inv, *dst); break;
      case Command::eigfn: run_eigfn(inv, *dst); break;
      case Command::poles: run_poles(inv, *dst); break;
      case Command::transform: run_transform(inv, *dst); break;
      case Command::continue_: run_continue(inv, *dst); break;
      case Command::evolve: run_evolve(inv, *dst); break;
      case Command::verify: return run_verify(inv, *dst, err);
    }
    dst->flush();
    if (!*dst) throw Error(ErrorKind::invalid_argument, "write failed");
  } catch (const Error& e) {
    err << "lscont " << to_string(inv.command) << ": " << lscont::to_string(e.kind()) << ": " << e.what();
    if (e.location()) err << " (at q = " << format_double(e.location()->real()) << "," << format_double(e.location()->imag()) << ")";
    err << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "lscont " << to_string(inv.command) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Parsed p = parse(argc, argv, out, err);
  if (!p.invocation) return p.exit_code;
  return run(*p.invocation, out, err);
}

}  // namespace lscont::cli
