#include "pseudocyl/errors.hpp"
#include "pseudocyl/fowler.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

using namespace pseudocyl;
using namespace pseudocyl::fowler;

// Reference values below come from 40-digit quadrature and root finding,
// independent of this library.

TEST_CASE("constant solution and center energy") {
  CHECK(constant_solution<double>(3) == doctest::Approx(0.75983568565159254733).epsilon(1e-15));
  CHECK(constant_solution<double>(4) == doctest::Approx(0.7071067811865475244).epsilon(1e-15));
  CHECK(constant_solution<double>(5) == doctest::Approx(0.6817316198804996211).epsilon(1e-15));
  CHECK(constant_solution<double>(6) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(center_energy(3) == doctest::Approx(-0.048112522432468813709).epsilon(1e-14));
  CHECK(center_energy(4) == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(center_energy(5) == doctest::Approx(-0.2091411006952005118).epsilon(1e-14));
  CHECK(center_energy(6) == doctest::Approx(-0.2962962962962962963).epsilon(1e-14));
  for (int n = 3; n <= 8; ++n) {
    const double u = constant_solution<double>(n);
    CHECK(std::abs(fowler_residual(n, u, 0.0)) < 1e-15);
  }
}

TEST_CASE("critical period") {
  CHECK(critical_period(3) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(critical_period(4) == doctest::Approx(4.442882938158366247).epsilon(1e-15));
  CHECK(critical_period(6) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("period function against reference quadrature") {
  const double Ec = center_energy(4);
  CHECK(std::abs(period_function(4, Ec / 2) - 5.0378540936193068772) < 1e-11);
  const auto [a, b] = turning_points(4, Ec / 2);
  CHECK(a == doctest::Approx(0.38268343236508977173).epsilon(1e-13));
  CHECK(b == doctest::Approx(0.92387953251128675613).epsilon(1e-13));
  const double E3 = 0.7 * center_energy(3);
  CHECK(std::abs(period_function(3, E3) - 6.9200457579648798531) < 1e-11);
}

TEST_CASE("center limit of the period is the threshold") {
  for (int n = 3; n <= 6; ++n) {
    const double Ec = center_energy(n);
    CHECK(std::abs(period_function(n, Ec + 1e-8 * std::abs(Ec)) - critical_period(n)) < 1e-4);
  }
}

TEST_CASE("quadrature period matches direct integration") {
  for (int n : {3, 4, 5}) {
    for (double s : {0.01, 0.3, 0.9}) {
      const double E = center_energy(n) * (1.0 - s);
      CHECK(std::abs(period_function(n, E) - return_time_period(n, E)) < 1e-10);
    }
  }
}

TEST_CASE("period is increasing in the energy") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> frac(1e-6, 0.999);
  for (int n : {3, 4, 5}) {
    std::vector<double> s(40);
    for (double& x : s) x = frac(rng);
    std::sort(s.begin(), s.end());
    const double Ec = center_energy(n);
    double prev = 0.0;
    for (double x : s) {
      const double T = period_function(n, Ec + x * std::abs(Ec));
      CHECK(T > prev);
      prev = T;
    }
  }
}

TEST_CASE("quadrature converges as the tolerance shrinks") {
  const Oscillator osc = fowler_oscillator(5);
  const double E = 0.4 * osc.center_energy();
  const double ref = osc.period(E, 1e-14);
  double prev_err = 1.0;
  for (double tol : {1e-4, 1e-8, 1e-12}) {
    const double err = std::abs(osc.period(E, tol) - ref);
    CHECK(err <= std::max(tol, 1e-15));
    CHECK(err <= prev_err);
    prev_err = err;
  }
}

TEST_CASE("solve_period reproduces the reference orbit") {
  const PeriodicOrbit o = solve_period(4, 6.0);
  CHECK(std::abs(o.energy - -0.021733401193460466632) < 1e-12);
  CHECK(o.x_min == doctest::Approx(0.21340281987311672851).epsilon(1e-11));
  CHECK(o.x_max == doctest::Approx(0.97696429641527949539).epsilon(1e-11));
  CHECK(std::abs(o.period - 6.0) < 1e-12);
  CHECK(o.max_residual() <= 1e-8);
  CHECK(o.max_energy_deviation() <= 1e-10);
  CHECK(o.x_max / o.x_min >= 1.01);
  CHECK(o.t.size() == 256);
  // the phase starts at the minimum
  CHECK(o.x[0] == doctest::Approx(o.x_min).epsilon(1e-12));
  CHECK(std::abs(o.x_prime[0]) < 1e-12);
  // ODE-backed derivatives agree with the residual
  const Jet3 j = o.factor.jet(1.234);
  CHECK(std::abs(fowler_residual(4, j.v, j.d2)) < 1e-14);
}

TEST_CASE("below the threshold there is no orbit") {
  try {
    solve_period(4, 4.0);
    FAIL("expected BelowThresholdError");
  } catch (const BelowThresholdError& e) {
    CHECK(e.threshold() == doctest::Approx(critical_period(4)));
    CHECK(std::string(e.what()).find("4.44288") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_period(3, 2.0 * std::numbers::pi), BelowThresholdError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(solve_period(2, 10.0), DomainError);
  CHECK_THROWS_AS(fowler_residual(4, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(period_function(4, 0.0), DegenerateOrbitError);
  CHECK_THROWS_AS(period_function(4, center_energy(4)), DegenerateOrbitError);
}
