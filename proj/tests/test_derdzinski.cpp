#include "pseudocyl/derdzinski.hpp"
#include "pseudocyl/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pseudocyl;
using namespace pseudocyl::derdzinski;

namespace {
const DerdzinskiParams kP{3, 6.0, 2.0};
}

TEST_CASE("constant solution and center energy") {
  const double h0 = derdzinski_constant(kP);
  CHECK(h0 == doctest::Approx(1.3554030054147672479).epsilon(1e-15));
  CHECK(std::abs(derdzinski_residual(kP, h0, 0.0)) <= 1e-12);
  CHECK(center_energy(kP) == doctest::Approx(-2.7556759606310753605).epsilon(1e-14));
  CHECK(small_oscillation_period(kP) == doctest::Approx(std::numbers::pi * std::numbers::sqrt2));
}

TEST_CASE("period against reference quadrature") {
  const double E = center_energy(kP) / 2;
  CHECK(std::abs(period(kP, E) - 4.2775714404529964428) < 1e-11);
  const double Ec = center_energy(kP);
  CHECK(std::abs(period(kP, Ec + 1e-8 * std::abs(Ec)) - small_oscillation_period(kP)) < 1e-4);
}

TEST_CASE("mid-window orbit") {
  const PeriodicOrbit o = solve_derdzinski_periodic(kP, center_energy(kP) / 2);
  CHECK(o.x_min == doctest::Approx(0.27740787322863092978).epsilon(1e-11));
  CHECK(o.x_max == doctest::Approx(2.5703625657919476252).epsilon(1e-11));
  CHECK(o.max_residual() <= 1e-8);
  CHECK(o.max_energy_deviation() <= 1e-10);
  const Jet3 j = o.factor.jet(0.77);
  CHECK(std::abs(derdzinski_residual(kP, j.v, j.d2)) < 1e-13);
}

TEST_CASE("scaling covariance: (R, C) -> (s R, s C) rescales time") {
  // h(t) solves the (R, C) equation iff h(sqrt(s) t) solves (s R, s C)
  const DerdzinskiParams q{3, 12.0, 4.0};
  CHECK(derdzinski_constant(q) == doctest::Approx(derdzinski_constant(kP)));
  const double s = 2.0;
  const double E = 0.5 * center_energy(kP);
  CHECK(period(q, s * E) == doctest::Approx(period(kP, E) / std::sqrt(s)).epsilon(1e-11));
}

TEST_CASE("parameter validation and window edges") {
  CHECK_THROWS_AS(validate({2, 6.0, 2.0}), DomainError);
  CHECK_THROWS_AS(validate({3, 6.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate({3, -1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(solve_derdzinski_periodic(kP, center_energy(kP)), DegenerateOrbitError);
  CHECK_THROWS_AS(solve_derdzinski_periodic(kP, 0.0), DegenerateOrbitError);
}
