#include "doctest.h"
#include "cli.hpp"
#include "lscont/eigenfunctions.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace lscont;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "lscont");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<double> row(const std::string& line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) v.push_back(std::stod(c));
  return v;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(cli::format_double(x)) == x);
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(2.0) == "2");
}

TEST_CASE("grid and complex parsing") {
  CHECK(cli::parse_grid("0.1:20:0.1").points().size() == 200);
  CHECK(cli::parse_grid("0:1:0.5").points().size() == 3);
  CHECK_THROWS_AS(cli::parse_grid("0:1"), Error);
  CHECK_THROWS_AS(cli::parse_grid("0:1:0"), Error);
  CHECK_THROWS_AS(cli::parse_grid("2:1:0.1"), Error);
  CHECK(cli::parse_complex("2.5,-0.3") == cplx(2.5, -0.3));
  CHECK(cli::parse_complex("4") == cplx(4.0, 0.0));
  CHECK_THROWS_AS(cli::parse_complex("1,2,3"), Error);
  CHECK_THROWS_AS(cli::parse_complex("x"), Error);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"jost", "--help"}).code == 0);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"jost"}).code == 2);
  CHECK(call({"--a", "2", "--b", "1", "jost", "--grid", "1:2:1"}).code == 2);
  CHECK(call({"--v0", "abc", "jost", "--grid", "1:2:1"}).code == 2);
  CHECK(call({"--quad-order", "0", "transform"}).code == 2);
  CHECK(call({"transform", "--phi", "bump:3,2"}).code == 2);
  CHECK(call({"transform", "--channel", "sideways"}).code == 2);
  CHECK(call({"eigfn", "--q", "1", "--sign", "x", "--grid", "0:1:1"}).code == 2);
  CHECK(call({"verify", "--suite", "nope"}).code == 2);
  CHECK(call({"evolve", "--t", "0.5", "--mode", "sideways"}).code == 2);

  const Result r = call({"evolve", "--mode", "retarded", "--t", "-1", "--rstep", "1", "--rmax", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("not defined for t<0") != std::string::npos);
  const Result p = call({"eigfn", "--q", "2.3190998502190,-0.0093031055", "--grid", "0:1:0.5"});
  CHECK(p.code == 1);
  CHECK(p.err.find("at-pole") != std::string::npos);
}

TEST_CASE("jost CSV") {
  const Result r = call({"jost", "--grid", "0.1:20:0.1"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 201);
  CHECK(l[0] == "k_re,k_im,j_plus_re,j_plus_im,j_minus_re,j_minus_im,s_re,s_im");
  for (std::size_t i = 1; i < l.size(); ++i) {
    const auto v = row(l[i]);
    REQUIRE(v.size() == 8);
    const JostPair j = jost_pm(PhysicalConfig::canonical(), cplx(v[0], v[1]));
    CHECK(v[2] == j.plus.real());
    CHECK(v[5] == j.minus.imag());
    CHECK(std::abs(std::hypot(v[6], v[7]) - 1.0) < 1e-12);
  }
}

TEST_CASE("config file and overrides") {
  const std::string path = "test_cli_config.cfg";
  {
    std::ofstream f(path);
    f << "# shell\nv0 = 20\nb = 3\n";
  }
  const Result a = call({"--config", path, "jost", "--grid", "1:1:1"});
  const Result b = call({"--config", path, "--v0", "30", "jost", "--grid", "1:1:1"});
  const Result c = call({"--v0", "30", "--b", "3", "jost", "--grid", "1:1:1"});
  REQUIRE(a.code == 0);
  CHECK(a.out != b.out);
  CHECK(b.out == c.out);
  // global flags may follow the subcommand too
  CHECK(call({"jost", "--grid", "1:1:1", "--v0", "30", "--b", "3"}).out == c.out);
  CHECK(call({"--config", "missing.cfg", "jost", "--grid", "1:1:1"}).code == 2);
  {
    std::ofstream f(path);
    f << "spin = 1\n";
  }
  CHECK(call({"--config", path, "jost", "--grid", "1:1:1"}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("poles JSON") {
  const Result r = call({"poles"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["sign"] == "+");
  CHECK(j["rectangle"].size() == 4);
  REQUIRE(j["zeros"].size() == 5);
  for (const auto& z : j["zeros"]) {
    const cplx q(z["re"].get<double>(), z["im"].get<double>());
    CHECK(std::abs(jost_pm(PhysicalConfig::canonical(), q).plus) < 1e-10);
  }
  const auto m = nlohmann::json::parse(call({"poles", "--sign", "-", "--rect", "-10,-0.1,0.01,3"}).out);
  REQUIRE(m["zeros"].size() == 5);
  CHECK(m["zeros"][4]["re"].get<double>() == doctest::Approx(-j["zeros"][0]["re"].get<double>()).epsilon(1e-10));
  CHECK(call({"poles", "--rect", "1,0,0,1"}).code == 2);
}

TEST_CASE("eigfn, transform and continue") {
  const Result e = call({"eigfn", "--q", "2.5,-0.3", "--sign", "0", "--grid", "0:2:0.5"});
  REQUIRE(e.code == 0);
  auto l = lines(e.out);
  REQUIRE(l.size() == 6);
  CHECK(l[0] == "r,chi_re,chi_im");
  const auto v = row(l[3]);
  CHECK(v[1] == chi_zero(1.0, cplx(2.5, -0.3)).real());

  const Result t = call({"transform", "--phi", "bump:2,6", "--channel", "minus", "--grid", "1:3:1"});
  REQUIRE(t.code == 0);
  l = lines(t.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "k,f_re,f_im");

  // on the real axis the bra is the plus-channel transform
  const Result c = call({"continue", "--phi", "bump:2,6", "--re", "1:3:1", "--im", "0:0:1"});
  const Result f = call({"transform", "--phi", "bump:2,6", "--channel", "plus", "--grid", "1:3:1"});
  REQUIRE(c.code == 0);
  const auto lc = lines(c.out), lf = lines(f.out);
  CHECK(lc[0] == "q_re,q_im,braval_re,braval_im,quad_err");
  REQUIRE(lc.size() == 4);
  for (std::size_t i = 1; i < 4; ++i) {
    const auto a = row(lc[i]), b = row(lf[i]);
    CHECK(std::abs(cplx(a[2], a[3]) - cplx(b[1], b[2])) < 1e-10);
  }
  CHECK(call({"continue", "--re", "1:2:1", "--im", "0:0:1", "--kind", "both"}).code == 2);
}

TEST_CASE("evolve writes a file") {
  const std::string path = "test_cli_evolve.csv";
  const Result r = call({"evolve", "--t", "0.5", "--mode", "retarded", "--rstep", "1", "--rmax", "6", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  const auto l = lines(s.str());
  REQUIRE(l.size() == 7);
  CHECK(l[0] == "r,re,im,t");
  CHECK(row(l[1])[3] == 0.5);
  const Result g = call({"evolve", "--t", "0.5", "--rstep", "1", "--rmax", "6"});
  const auto lg = lines(g.out);
  for (std::size_t i = 1; i < l.size(); ++i) {
    const auto a = row(l[i]), b = row(lg[i]);
    CHECK(std::abs(cplx(a[1], a[2]) - cplx(b[1], b[2])) < 1e-6);
  }
  std::remove(path.c_str());
  CHECK(call({"jost", "--grid", "1:1:1", "--out", "/nonexistent/dir/x.csv"}).code == 1);
}

TEST_CASE("verify subcommand") {
  const std::string path = "test_cli_verify.json";
  const Result r = call({"verify", "--suite", "young", "--json", path, "--no-timing", "--seed", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("4 passed, 0 failed") != std::string::npos);
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  REQUIRE(j.size() == 4);
  CHECK(j[0]["runtime"].get<double>() == 0.0);
  CHECK(j[0]["seed"] == 5);
  std::remove(path.c_str());

  const Result bad = call({"--kmax", "8", "verify", "--suite", "transforms"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("fail") != std::string::npos);
}
