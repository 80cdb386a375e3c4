#include "doctest.h"
#include "lscont/poles.hpp"

#include <cmath>

using namespace lscont;

namespace {

// Zeros of J+ for a=1, b=2, V0=10 (hbar^2/2m = 1), located independently with
// mpmath findroot at 30 digits on the same boundary-matching formula.
const cplx kReference[] = {
    {2.3190998502, -0.0093031055}, {3.9925107140, -0.2591498651}, {5.1171498807, -0.4540089256},
    {6.6657092761, -0.6786093295}, {8.0908855515, -0.7340334068}, {9.6626721837, -0.8987746793},
};

}  // namespace

TEST_CASE("winding number of a polynomial") {
  std::vector<cplx> circle;
  for (int i = 0; i < 64; ++i) circle.push_back(std::polar(2.0, 2 * kPi * i / 64));
  auto tol = [](cplx) { return 1e-14; };
  CHECK(winding_number([](cplx z) { return z * z - 1.0; }, circle, tol) == 2);
  CHECK(winding_number([](cplx z) { return (z - 3.0) * (z + 0.5); }, circle, tol) == 1);
  CHECK(winding_number([](cplx z) { return std::exp(z); }, circle, tol) == 0);
  const std::vector<cplx> square{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  try {
    winding_number([](cplx z) { return z - cplx{1.0, 0.25}; }, square, tol);
    FAIL("expected zero_on_boundary");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::zero_on_boundary);
  }
}

TEST_CASE("free particle has no zeros") {
  const PhysicalConfig free = PhysicalConfig::free_particle();
  CHECK(count_zeros(free, {0.1, 10, -3, -0.001}, Sign::plus) == 0);
  CHECK(find_resonances(free, {0.1, 10, -3, -0.001}, Sign::plus).zeros.empty());
}

TEST_CASE("no zeros of J+ in the upper half plane") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  CHECK(count_zeros(cfg, {0.1, 10, 0.1, 5}, Sign::plus) == 0);
  CHECK(count_zeros(cfg, {-10, 10, 0.001, 5}, Sign::plus) == 0);
}

TEST_CASE("resonances of the canonical shell") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const Rect rect{0.1, 10, -3, -0.001};
  const PoleSet z = find_resonances(cfg, rect, Sign::plus);
  CHECK(count_zeros(cfg, rect, Sign::plus) == int(z.zeros.size()));
  REQUIRE(z.zeros.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(z.zeros[i].q0 - kReference[i]) < 1e-9);
    CHECK(z.zeros[i].jost_residual <= 1e-10 * std::max(1.0, std::norm(z.zeros[i].q0)));
    CHECK(std::abs(z.zeros[i].derivative) > 1e-3);
  }
  // excluding the near-axis strip drops the lowest one
  const Rect strip{0.1, 10, -3, -0.01};
  const PoleSet z2 = find_resonances(cfg, strip, Sign::plus);
  CHECK(count_zeros(cfg, strip, Sign::plus) == int(z2.zeros.size()));
  CHECK(z2.zeros.size() == 5);
}

TEST_CASE("symmetries of the zero sets") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  const PoleSet zp = find_resonances(cfg, {0.1, 10, -3, -0.001}, Sign::plus);
  const PoleSet mirror = find_resonances(cfg, {-10, -0.1, -3, -0.001}, Sign::plus);
  const PoleSet zm = find_resonances(cfg, {-10, -0.1, 0.001, 3}, Sign::minus);
  REQUIRE(mirror.zeros.size() == zp.zeros.size());
  REQUIRE(zm.zeros.size() == zp.zeros.size());
  const std::size_t n = zp.zeros.size();
  for (std::size_t i = 0; i < n; ++i) {
    // sorted by Re: the mirror image of zp[i] is mirror[n-1-i]
    CHECK(std::abs(mirror.zeros[n - 1 - i].q0 + std::conj(zp.zeros[i].q0)) < 1e-8);
    CHECK(std::abs(zm.zeros[n - 1 - i].q0 + zp.zeros[i].q0) < 1e-8);
    CHECK_THROWS_AS(s_matrix(cfg, zp.zeros[i].q0), Error);
  }
}

TEST_CASE("Newton refinement is stable under a tighter tolerance") {
  const PhysicalConfig cfg = PhysicalConfig::canonical();
  PoleSearchOptions loose, tight;
  loose.newton_tol = 1e-10;
  tight.newton_tol = 0.5e-10;
  const PoleSet a = find_resonances(cfg, {0.1, 10, -3, -0.001}, Sign::plus, loose);
  const PoleSet b = find_resonances(cfg, {0.1, 10, -3, -0.001}, Sign::plus, tight);
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) CHECK(std::abs(a.zeros[i].q0 - b.zeros[i].q0) < 1e-9);
}
