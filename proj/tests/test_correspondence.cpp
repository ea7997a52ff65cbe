#include "pseudocyl/correspondence.hpp"
#include "pseudocyl/derdzinski.hpp"
#include "pseudocyl/errors.hpp"
#include "pseudocyl/fowler.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pseudocyl;
using namespace pseudocyl::correspondence;

namespace {

const DerdzinskiParams kP{3, 6.0, 2.0};

PeriodicScalar sinusoid(double T, double a) {
  const double w = 2.0 * std::numbers::pi / T;
  return PeriodicScalar(
      T,
      [w, a](double t) {
        const double s = a * std::sin(w * t), c = a * std::cos(w * t);
        return Jet3{1.0 + s, w * c, -w * w * s, -w * w * w * c};
      },
      "1 + a sin");
}

const PeriodicOrbit& mid_orbit() {
  static const PeriodicOrbit o =
      derdzinski::solve_derdzinski_periodic(kP, derdzinski::center_energy(kP) / 2);
  return o;
}

}  // namespace

TEST_CASE("identity and constant warps") {
  const WarpedMetric one(4.0, PeriodicScalar::constant(1.0, 4.0), 3);
  const Reparametrization r = arclength_reparametrize(one);
  CHECK(r.length() == doctest::Approx(4.0).epsilon(1e-15));
  for (double t : {0.0, 0.7, 3.9}) CHECK(std::abs(r.theta_of_t(t) - t) < 1e-14);
  const ConformalEquivalence eq = warped_to_conformal(one);
  CHECK(std::abs(eq.phi(1.3) - 1.0) < 1e-15);
  CHECK(eq.pullback_error <= 1e-9);

  const WarpedMetric c(4.0, PeriodicScalar::constant(0.8, 4.0), 3);
  CHECK(arclength_reparametrize(c).length() == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("sinusoidal warp: closed-form length and pullback identity") {
  const WarpedMetric w(5.0, sinusoid(5.0, 0.2), 3);
  const ConformalEquivalence eq = warped_to_conformal(w);
  // int_0^T dt / (1 + a sin) = T / sqrt(1 - a^2)
  CHECK(std::abs(eq.L - 5.1031036307982877046) < 1e-12);
  CHECK(std::abs(eq.L - length_by_quadrature(w)) < 1e-10);
  CHECK(eq.pullback_error <= 1e-9);
  CHECK(eq.reparam->round_trip_error() <= 1e-10);
  // d phi / d theta = f f'
  const double t = 1.1;
  const Jet3 f = w.f.jet(t);
  CHECK(eq.phi.jet(eq.reparam->theta_of_t(t)).d1 == doctest::Approx(f.v * f.d1).epsilon(1e-10));
}

TEST_CASE("Derdzinski warp: reparametrization table") {
  const WarpedMetric w = derdzinski_warp(mid_orbit(), FiberConvention::kTotalDimension);
  const Reparametrization r = arclength_reparametrize(w);
  CHECK(std::abs(r.length() - 7.5432594126750786126) < 1e-11);
  CHECK(std::abs(r.length() - length_by_quadrature(w)) < 1e-10);
  const auto& th = r.theta_nodes();
  REQUIRE(th.size() == 1025);
  for (std::size_t k = 0; k + 1 < th.size(); ++k) CHECK(th[k + 1] > th[k]);
  CHECK(th.back() == r.length());
  CHECK(r.round_trip_error() <= 1e-10);

  const ConformalEquivalence eq = warped_to_conformal(w);
  double worst = 0.0;
  for (std::size_t k = 0; k < th.size(); k += 16)
    worst = std::max(worst, std::abs(eq.phi(th[k]) - w.f(r.t_nodes()[k])));
  CHECK(worst <= 1e-10);
  // periodic in theta with period L
  CHECK(std::abs(eq.phi(0.3 + eq.L) - eq.phi(0.3)) < 1e-12);
  CHECK(eq.pullback_error <= 1e-9);

  const WarpedMetric wa = derdzinski_warp(mid_orbit(), FiberConvention::kFiberDimension);
  CHECK(std::abs(arclength_reparametrize(wa).length() - 4.3551028524751349796) < 1e-11);
}

TEST_CASE("induced factor w_c") {
  for (auto c : {FiberConvention::kTotalDimension, FiberConvention::kFiberDimension}) {
    const ConformalEquivalence eq = derdzinski_to_pseudocylindric(mid_orbit(), c);
    CHECK(eq.n == (c == FiberConvention::kTotalDimension ? 3 : 4));
    for (double th : {0.0, 0.9, 2.2}) {
      const double wc = eq.w_c(th), ph = eq.phi(th);
      CHECK(wc > 0.0);
      CHECK(std::abs(std::pow(wc, 4.0 / (eq.n - 2.0)) - ph * ph) <= 1e-12 * ph * ph);
    }
  }
  const ConformalEquivalence cyl =
      derdzinski_to_pseudocylindric(kP, FiberConvention::kTotalDimension, 5.0);
  CHECK(std::abs(cyl.w_c(0.4) - cyl.w_c(2.9)) < 1e-15);
}

TEST_CASE("identification transport: only one fiber convention works") {
  const auto good = derdzinski_to_pseudocylindric(mid_orbit(), FiberConvention::kTotalDimension);
  const IdentificationReport r = verify_identification(good, good.n);
  // fiber S^{m-1} of scalar curvature R gives R_bar = (m - 1) C
  CHECK(r.r_bar_mean == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(r.r_bar_stddev <= 1e-6);
  CHECK(r.generalized_fowler_residual_max <= 1e-8);
  CHECK(r.homothety_lambda == doctest::Approx(std::sqrt(4.0 / 6.0)).epsilon(1e-8));
  CHECK(r.fowler_residual_max <= 1e-6);
  CHECK(r.codazzi_max <= 1e-6);
  CHECK(r.dric_max >= 1e-3);
  CHECK(r.passed());
  CHECK(r.convention == "total-dimension");

  const auto bad = derdzinski_to_pseudocylindric(mid_orbit(), FiberConvention::kFiberDimension);
  const IdentificationReport rb = verify_identification(bad, bad.n, {16, 2, 0.4});
  CHECK(rb.r_bar_stddev > 1e-2);
  CHECK_FALSE(rb.passed());
}

TEST_CASE("cylindric case transports to a parallel metric") {
  const auto eq = derdzinski_to_pseudocylindric(kP, FiberConvention::kTotalDimension, 5.0);
  const IdentificationReport r = verify_identification(eq, eq.n, {16, 2, 0.4});
  CHECK(r.r_bar_mean == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(r.constant_scalar);
  CHECK(r.dric_max <= 1e-10);
  CHECK_FALSE(r.nonparallel);
}

TEST_CASE("a generic warp has nonconstant scalar curvature") {
  const auto eq = warped_to_conformal(WarpedMetric(5.0, sinusoid(5.0, 0.2), 3));
  const IdentificationReport r = verify_identification(eq, 4, {16, 2, 0.4});
  CHECK(r.r_bar_stddev > 1e-2);
  CHECK_FALSE(r.constant_scalar);
  CHECK(r.convention == "none");
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(WarpedMetric(5.0, sinusoid(5.0, 1.2), 3), DomainError);
  CHECK_THROWS_AS(WarpedMetric(4.0, sinusoid(5.0, 0.2), 3), DomainError);
  CHECK_THROWS_AS(WarpedMetric(5.0, sinusoid(5.0, 0.2), 1), DomainError);
  const auto eq = warped_to_conformal(WarpedMetric(5.0, sinusoid(5.0, 0.2), 3));
  CHECK_THROWS_AS(verify_identification(eq, 5), DomainError);
  const PeriodicOrbit fowler_orbit = fowler::solve_period(4, 6.0);
  CHECK_THROWS_AS(derdzinski_warp(fowler_orbit, FiberConvention::kTotalDimension), DomainError);
}
