#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lscont/continuation.hpp"
#include "lscont/eigenfunctions.hpp"
#include "lscont/jost.hpp"
#include "lscont/poles.hpp"
#include "lscont/propagators.hpp"
#include "lscont/testspace.hpp"
#include "lscont/transforms.hpp"
#include "lscont/verify.hpp"

namespace py = pybind11;
using namespace lscont;

namespace {

using release = py::call_guard<py::gil_scoped_release>;

Sign to_sign(const std::string& s) {
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  throw Error(ErrorKind::invalid_argument, "sign must be '+' or '-'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Jost functions, resonances and continued transforms for the spherical shell barrier";

  static py::exception<Error> error(m, "LscontError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(error.ptr())(e.what());
      inst.attr("kind") = to_string(e.kind());
      if (e.location()) inst.attr("location") = *e.location();
      else inst.attr("location") = py::none();
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<PhysicalConfig>(m, "PhysicalConfig")
      .def(py::init([](double hbar, double mass, double a, double b, double v0) {
             PhysicalConfig c{hbar, mass, a, b, v0};
             c.validate();
             return c;
           }),
           py::arg("hbar") = 1.0, py::arg("mass") = 0.5, py::arg("a") = 1.0, py::arg("b") = 2.0,
           py::arg("v0") = 10.0)
      .def_readwrite("hbar", &PhysicalConfig::hbar)
      .def_readwrite("mass", &PhysicalConfig::mass)
      .def_readwrite("a", &PhysicalConfig::a)
      .def_readwrite("b", &PhysicalConfig::b)
      .def_readwrite("v0", &PhysicalConfig::v0)
      .def("h2m", &PhysicalConfig::h2m)
      .def("validate", &PhysicalConfig::validate)
      .def_static("canonical", &PhysicalConfig::canonical)
      .def_static("free_particle", &PhysicalConfig::free_particle)
      .def("__repr__", [](const PhysicalConfig& c) {
        return "PhysicalConfig(hbar=" + py::repr(py::float_(c.hbar)).cast<std::string>() +
               ", mass=" + py::repr(py::float_(c.mass)).cast<std::string>() +
               ", a=" + py::repr(py::float_(c.a)).cast<std::string>() +
               ", b=" + py::repr(py::float_(c.b)).cast<std::string>() +
               ", v0=" + py::repr(py::float_(c.v0)).cast<std::string>() + ")";
      });
  m.def("parse_config", &parse_config, py::arg("text"), py::arg("base") = PhysicalConfig{});
  m.def("load_config", &load_config, py::arg("path"), py::arg("base") = PhysicalConfig{});

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("r_max", &QuadratureSpec::r_max)
      .def_readwrite("k_max", &QuadratureSpec::k_max)
      .def_readwrite("panels", &QuadratureSpec::panels)
      .def_readwrite("order", &QuadratureSpec::order)
      .def("validate", &QuadratureSpec::validate);

  m.def("jost", [](const PhysicalConfig& cfg, cplx q) {
    const JostPair j = jost_pm(cfg, q);
    return py::make_tuple(j.plus, j.minus);
  }, py::arg("cfg"), py::arg("q"), "(J+(q), J-(q))");
  m.def("s_matrix", &s_matrix, py::arg("cfg"), py::arg("q"));
  m.def("chi", [](const PhysicalConfig& cfg, double r, cplx q, const std::string& sign) {
    if (sign == "0") return chi_zero(r, q);
    return chi_pm(cfg, r, q, to_sign(sign));
  }, py::arg("cfg"), py::arg("r"), py::arg("q"), py::arg("sign") = "+");
  m.def("chi_on_grid", [](const PhysicalConfig& cfg, cplx q, const std::string& sign, const std::vector<double>& r) {
    std::vector<cplx> out;
    out.reserve(r.size());
    if (sign == "0") {
      for (double x : r) out.push_back(chi_zero(x, q));
    } else {
      const LSEigenfunction f(cfg, q, to_sign(sign));
      for (double x : r) out.push_back(f(x));
    }
    return out;
  }, py::arg("cfg"), py::arg("q"), py::arg("sign"), py::arg("r"));

  py::class_<JostZero>(m, "JostZero")
      .def_readonly("q0", &JostZero::q0)
      .def_readonly("jost_residual", &JostZero::jost_residual)
      .def_readonly("derivative", &JostZero::derivative)
      .def("__repr__", [](const JostZero& z) { return "JostZero(" + py::repr(py::cast(z.q0)).cast<std::string>() + ")"; });
  m.def("count_zeros", [](const PhysicalConfig& cfg, std::tuple<double, double, double, double> r, const std::string& sign) {
    const auto [a, b, c, d] = r;
    return count_zeros(cfg, Rect{a, b, c, d}, to_sign(sign));
  }, py::arg("cfg"), py::arg("rect") = std::make_tuple(0.1, 10.0, -3.0, -0.01), py::arg("sign") = "+");
  m.def("find_resonances", [](const PhysicalConfig& cfg, std::tuple<double, double, double, double> r, const std::string& sign) {
    const auto [a, b, c, d] = r;
    return find_resonances(cfg, Rect{a, b, c, d}, to_sign(sign)).zeros;
  }, py::arg("cfg"), py::arg("rect") = std::make_tuple(0.1, 10.0, -3.0, -0.01), py::arg("sign") = "+", release());

  py::class_<TestFunction>(m, "TestFunction")
      .def("__call__", &TestFunction::value)
      .def("derivative", &TestFunction::derivative)
      .def_property_readonly("label", &TestFunction::label)
      .def_property_readonly("compact", &TestFunction::compact)
      .def_property_readonly("support", [](const TestFunction& f) {
        std::vector<std::pair<double, double>> s;
        for (const Interval& i : f.support()) s.emplace_back(i.lo, i.hi);
        return s;
      })
      .def("__repr__", [](const TestFunction& f) { return "TestFunction(" + f.label() + ")"; });
  m.def("bump", &bump, py::arg("lo"), py::arg("hi"), py::arg("degree") = 0);
  m.def("gauss_damped", &gauss_damped, py::arg("cfg"), py::arg("degree"), py::arg("c"), py::arg("delta") = -1.0);
  m.def("parse_test_function", &parse_test_function, py::arg("cfg"), py::arg("spec"));
  m.def("standard_family", &standard_family, py::arg("cfg"));

  m.def("transform", [](const PhysicalConfig& cfg, const TestFunction& phi, const std::string& channel,
                        const std::vector<double>& k, const QuadratureSpec& quad) {
    const Channel ch = parse_channel(channel);
    std::vector<cplx> out;
    out.reserve(k.size());
    for (double x : k) out.push_back(forward(cfg, phi, ch, x, quad));
    return out;
  }, py::arg("cfg"), py::arg("phi"), py::arg("channel"), py::arg("k"), py::arg("quad") = QuadratureSpec{}, release());

  m.def("bra", [](const PhysicalConfig& cfg, cplx q, const TestFunction& phi, const std::string& sign,
                  const QuadratureSpec& quad) { return bra_eval(cfg, q, phi, to_sign(sign), quad).value; },
        py::arg("cfg"), py::arg("q"), py::arg("phi"), py::arg("sign") = "+", py::arg("quad") = QuadratureSpec{});
  m.def("ket", [](const PhysicalConfig& cfg, cplx q, const TestFunction& phi, const std::string& sign,
                  const QuadratureSpec& quad) { return ket_eval(cfg, q, phi, to_sign(sign), quad).value; },
        py::arg("cfg"), py::arg("q"), py::arg("phi"), py::arg("sign") = "+", py::arg("quad") = QuadratureSpec{});

  py::class_<RadialField>(m, "RadialField")
      .def_readonly("grid", &RadialField::grid)
      .def_readonly("values", &RadialField::values)
      .def_readonly("t", &RadialField::t)
      .def_readonly("tail_bound", &RadialField::tail_bound);
  m.def("relative_l2_difference", &relative_l2_difference);
  m.def("evolve", [](const PhysicalConfig& cfg, const TestFunction& phi, double t, const std::vector<double>& r,
                     const std::string& mode, const std::string& sign, double eps, const QuadratureSpec& quad) {
    EvolutionOptions opt;
    opt.eps = eps;
    if (mode == "group") return group_evolve(cfg, phi, to_sign(sign) == Sign::plus ? Channel::plus : Channel::minus, t, r, quad);
    if (mode == "retarded") return retarded_evolve(cfg, phi, to_sign(sign), t, r, quad, opt);
    if (mode == "advanced") return advanced_evolve(cfg, phi, to_sign(sign), t, r, quad, opt);
    if (mode == "free-retarded") return free_retarded_evolve(cfg, phi, t, r, quad, eps);
    if (mode == "free-advanced") return free_advanced_evolve(cfg, phi, t, r, quad, eps);
    throw Error(ErrorKind::invalid_argument, "unknown mode '" + mode + "'");
  }, py::arg("cfg"), py::arg("phi"), py::arg("t"), py::arg("r"), py::arg("mode") = "group", py::arg("sign") = "+",
        py::arg("eps") = 0.2, py::arg("quad") = QuadratureSpec{}, release());

  py::class_<CheckEntry>(m, "CheckEntry")
      .def_readonly("check_id", &CheckEntry::check_id)
      .def_readonly("anchor", &CheckEntry::anchor)
      .def_property_readonly("status", [](const CheckEntry& e) { return std::string(to_string(e.status)); })
      .def_readonly("metric", &CheckEntry::metric)
      .def_readonly("tolerance", &CheckEntry::tolerance)
      .def_readonly("runtime", &CheckEntry::runtime)
      .def_readonly("note", &CheckEntry::note);
  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("entries", &VerificationReport::entries)
      .def_readonly("seed", &VerificationReport::seed)
      .def_readonly("suite", &VerificationReport::suite)
      .def("passed", &VerificationReport::passed)
      .def("to_json", &report_json);
  m.def("suite_names", &suite_names);
  m.def("verify", &run_all, py::arg("cfg") = PhysicalConfig{}, py::arg("suite") = "all",
        py::arg("seed") = kDefaultSeed, py::arg("quad") = QuadratureSpec{}, release());
}
