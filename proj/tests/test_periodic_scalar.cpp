#include "pseudocyl/errors.hpp"
#include "pseudocyl/jet.hpp"
#include "pseudocyl/periodic_scalar.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pseudocyl;

namespace {

std::vector<double> sample(double (*f)(double), int n, double T) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = f(T * k / n);
  return v;
}

double smooth(double t) { return std::exp(std::sin(t)); }

}  // namespace

TEST_CASE("trig interpolation reproduces a band-limited function exactly") {
  const double T = 3.0, w = 2.0 * std::numbers::pi / T;
  std::vector<double> v(16);
  for (int k = 0; k < 16; ++k) {
    const double t = T * k / 16;
    v[k] = 2.0 + std::cos(w * t) - 0.5 * std::sin(3 * w * t);
  }
  const TrigSeries s(v, T);
  const double t = 0.37;
  const Jet3 j = s.jet(t);
  CHECK(j.v == doctest::Approx(2.0 + std::cos(w * t) - 0.5 * std::sin(3 * w * t)).epsilon(1e-14));
  CHECK(j.d1 == doctest::Approx(-w * std::sin(w * t) - 1.5 * w * std::cos(3 * w * t)).epsilon(1e-13));
  CHECK(j.d2 == doctest::Approx(-w * w * std::cos(w * t) + 4.5 * w * w * std::sin(3 * w * t)).epsilon(1e-13));
  CHECK(j.d3 == doctest::Approx(w * w * w * std::sin(w * t) + 13.5 * w * w * w * std::cos(3 * w * t)).epsilon(1e-12));
  CHECK(s.mean() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.integral(T) == doctest::Approx(2.0 * T).epsilon(1e-14));
  CHECK(s.tail_ratio() < 1e-14);
}

TEST_CASE("spectral accuracy on an analytic periodic function") {
  const double T = 2.0 * std::numbers::pi;
  const TrigSeries s(sample(smooth, 64, T), T);
  for (double t : {0.1, 1.3, 2.9, 5.5}) {
    const Jet3 j = s.jet(t);
    CHECK(std::abs(j.v - smooth(t)) < 1e-14);
    CHECK(std::abs(j.d1 - std::cos(t) * smooth(t)) < 1e-13);
  }
  // integral of exp(sin t) over one period is 2 pi I0(1)
  CHECK(std::abs(s.integral(T) - 2.0 * std::numbers::pi * 1.2660658777520082) < 1e-13);
  // periodic extension of the integral
  CHECK(std::abs(s.integral(T + 1.0) - s.integral(T) - s.integral(1.0)) < 1e-13);
}

TEST_CASE("TrigSeries input validation") {
  CHECK_THROWS_AS(TrigSeries(std::vector<double>(7, 1.0), 1.0), DomainError);
  CHECK_THROWS_AS(TrigSeries(std::vector<double>(8, 1.0), -1.0), DomainError);
}

TEST_CASE("jet arithmetic matches closed-form derivatives") {
  // g(t) = t^2 at t = 1.5 composed with pow 2.5 gives t^5
  const Jet3 g{2.25, 3.0, 2.0, 0.0};
  const Jet3 p = pow(g, 2.5);
  const double t = 1.5;
  CHECK(p.v == doctest::Approx(std::pow(t, 5)));
  CHECK(p.d1 == doctest::Approx(5 * std::pow(t, 4)));
  CHECK(p.d2 == doctest::Approx(20 * std::pow(t, 3)));
  CHECK(p.d3 == doctest::Approx(60 * t * t));
  const Jet3 prod = g * g;
  CHECK(prod.d3 == doctest::Approx(24 * t));
}

TEST_CASE("reparametrization by a speed jet") {
  // theta = t^2 / 2 + t, dt/dtheta = 1 / (t + 1); g(t) = t^3
  const double t = 0.8;
  const double s = 1.0 / (t + 1.0);
  const Jet3 speed{s, -s * s, 2 * s * s * s, -6 * s * s * s * s};
  const Jet3 g{t * t * t, 3 * t * t, 6 * t, 6.0};
  const Jet3 r = reparametrize(g, speed);
  // d/dtheta = s d/dt, checked against nested application
  const double e1 = s * 3 * t * t;
  const double de1 = -s * s * 3 * t * t + s * 6 * t;  // d/dt of e1
  const double e2 = s * de1;
  const double de2 = 9 * t * t * std::pow(s, 4) - 18 * t * s * s * s + 6 * s * s;  // d/dt of e2
  CHECK(r.d1 == doctest::Approx(e1));
  CHECK(r.d2 == doctest::Approx(e2));
  CHECK(r.d3 == doctest::Approx(s * de2));
}

TEST_CASE("PeriodicScalar factories and positivity") {
  const auto c = PeriodicScalar::constant(2.5, 4.0);
  CHECK(c(1.7) == 2.5);
  CHECK(c.jet(0.3).d3 == 0.0);
  CHECK_NOTHROW(c.require_positive());
  CHECK_THROWS_AS(PeriodicScalar::interpolate({1.0, 0.5, -0.2, 0.5}, 1.0, "dips"), DomainError);
  const PeriodicScalar neg(1.0, [](double t) { return Jet3{std::cos(6.283185307179586 * t), 0, 0, 0}; }, "cos");
  CHECK_THROWS_AS(neg.require_positive(), DomainError);
  const auto [lo, hi] = PeriodicScalar::interpolate(sample(smooth, 32, 2 * std::numbers::pi),
                                                    2 * std::numbers::pi, "exp sin")
                            .range();
  CHECK(lo == doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
  CHECK(hi == doctest::Approx(std::exp(1.0)).epsilon(1e-4));
  CHECK_THROWS_AS(PeriodicScalar::constant(1.0, 0.0), DomainError);
}
