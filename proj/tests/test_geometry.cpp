#include "pseudocyl/errors.hpp"
#include "pseudocyl/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pseudocyl;
using namespace pseudocyl::geometry;

namespace {

ChartPoint point(std::initializer_list<double> xs) {
  ChartPoint p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

// A non-symmetric-space metric on a box, for identities that hold for any
// metric.
MetricField lumpy_metric() {
  MetricField m;
  m.dim = 3;
  m.domain = {Eigen::VectorXd::Constant(3, -1.0), Eigen::VectorXd::Constant(3, 1.0),
              {false, false, false}};
  m.fd_step = Eigen::VectorXd::Constant(3, default_fd_step());
  m.label = "lumpy";
  m.components = [](const ChartPoint& p) {
    const double x = p[0], y = p[1], z = p[2];
    Matrix g(3, 3);
    g << 1.0 + x * x, 0.3 * x * y, 0.1 * std::sin(z),
        0.3 * x * y, 2.0 + std::sin(z), 0.1 * x,
        0.1 * std::sin(z), 0.1 * x, 1.0 + y * y;
    return g;
  };
  return m;
}

// S^2 x S^2 with unit factors: Einstein, not conformally flat.
MetricField sphere_product() {
  MetricField m;
  m.dim = 4;
  m.domain = {point({0.3, -10.0, 0.3, -10.0}),
              point({std::numbers::pi - 0.3, 10.0, std::numbers::pi - 0.3, 10.0}),
              {false, true, false, true}};
  m.fd_step = Eigen::VectorXd::Constant(4, default_fd_step());
  m.label = "S2 x S2";
  m.components = [](const ChartPoint& p) {
    Eigen::Vector4d d(1.0, std::pow(std::sin(p[0]), 2), 1.0, std::pow(std::sin(p[2]), 2));
    return Matrix(d.asDiagonal());
  };
  return m;
}

}  // namespace

TEST_CASE("flat space has vanishing curvature") {
  const MetricField flat = flat_metric(3);
  const ChartPoint p = point({0.2, -0.4, 1.1});
  CHECK(christoffel(flat, p).max_abs() < 1e-12);
  CHECK(riemann(flat, p).max_abs() < 1e-9);
  CHECK(std::abs(scalar_curvature(flat, p)) < 1e-9);
}

TEST_CASE("round sphere: connection, curvature tensor and scalar curvature") {
  for (int d : {2, 3}) {
    const MetricField s = sphere_metric(d);
    const ChartPoint p = d == 2 ? point({1.1, 0.4}) : point({1.1, 0.7, 2.0});
    CHECK((christoffel(s, p).values - sphere_christoffel(p).values).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(scalar_curvature(s, p) == doctest::Approx(d * (d - 1.0)).epsilon(1e-8));

    // R_ijkl = g_ik g_jl - g_il g_jk for unit sectional curvature
    const TensorComponents r = riemann_lowered(s, p);
    const Matrix g = s(p);
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            worst = std::max(worst, std::abs(r(i, j, k, l) -
                                             (g(i, k) * g(j, l) - g(i, l) * g(j, k))));
    CHECK(worst < 1e-8);

    const TensorComponents ric = ricci(s, p);
    for (int i = 0; i < d; ++i)
      CHECK(ric(i, i) == doctest::Approx((d - 1.0) * g(i, i)).epsilon(1e-8));
    // Einstein metric: parallel Ricci tensor
    CHECK(ricci_covariant_derivative(s, p).max_abs() < 1e-7);
  }
}

TEST_CASE("cylinder S^1 x S^{n-1}") {
  for (int n : {3, 4, 5}) {
    const MetricField c = cylinder_metric(n, 5.0);
    ChartPoint p = ChartPoint::Constant(n, 1.2);
    p[0] = 0.7;
    CHECK(scalar_curvature(c, p) == doctest::Approx((n - 1.0) * (n - 2.0)).epsilon(1e-8));
    CHECK(codazzi_residual(c, p) < 1e-7);
    const double w = tensor_norm(weyl(c, p), c(p));
    CHECK(w < (n == 3 ? 1e-12 : 1e-7));
  }
}

TEST_CASE("algebraic symmetries and contracted Bianchi on a generic metric") {
  const MetricField m = lumpy_metric();
  const ChartPoint p = point({0.3, -0.2, 0.5});
  const RiemannSymmetryResiduals r = riemann_symmetry_residuals(m, p);
  CHECK(r.antisymmetry_last_pair < 1e-12);
  CHECK(r.antisymmetry_first_pair < 1e-8);
  CHECK(r.pair_symmetry < 1e-8);
  CHECK(r.first_bianchi < 1e-8);
  CHECK(contracted_bianchi_residual(m, p) < 1e-6);
  // Weyl vanishes identically in three dimensions
  CHECK(tensor_norm(weyl(m, p), m(p)) < 1e-12);
}

TEST_CASE("Weyl tensor is conformally covariant") {
  const MetricField base = sphere_product();
  const auto u = [](const ChartPoint& p) { return std::exp(0.2 * p[0] - 0.1 * p[2] + 0.05 * p[1]); };
  const MetricField scaled = conformal_metric(base, u, 2.0);
  const ChartPoint p = point({1.0, 0.4, 1.3, -0.6});
  const TensorComponents w0 = weyl(base, p);
  const TensorComponents w1 = weyl(scaled, p);
  // S^2 x S^2 is not conformally flat
  CHECK(tensor_norm(w0, base(p)) > 0.5);
  // all-lower Weyl scales with the conformal factor
  const double f = u(p) * u(p);
  CHECK((w1.values - f * w0.values).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(tensor_norm(w1, scaled(p)) == doctest::Approx(tensor_norm(w0, base(p)) / f).epsilon(1e-6));
}

TEST_CASE("Laplace-Beltrami on flat space and the sphere") {
  const auto r2 = [](const ChartPoint& p) { return p[0] * p[0] + p[1] * p[1]; };
  CHECK(laplace_beltrami(flat_metric(2), r2, point({0.3, 0.8})) == doctest::Approx(4.0).epsilon(1e-8));
  // cos(theta) is a first spherical harmonic on S^2: eigenvalue -2
  const auto z = [](const ChartPoint& p) { return std::cos(p[0]); };
  const ChartPoint q = point({0.9, 1.5});
  CHECK(laplace_beltrami(sphere_metric(2), z, q) == doctest::Approx(-2.0 * std::cos(0.9)).epsilon(1e-8));
}

TEST_CASE("Yamabe residual of the cylinder itself") {
  // u = ubar is a constant solution; both Laplacian signs agree on it
  const double ubar = 1.0 / std::sqrt(2.0);
  const auto u = [ubar](const ChartPoint&) { return ubar; };
  const ChartPoint p = point({0.5, 1.0, 1.2, 0.3});
  CHECK(std::abs(yamabe_pde_residual(4, u, p, LaplacianConvention::kPositive)) < 1e-12);
  CHECK(std::abs(yamabe_pde_residual(4, u, p, LaplacianConvention::kLaplaceBeltrami)) < 1e-12);
}

TEST_CASE("domain and conditioning errors") {
  const MetricField s = sphere_metric(2);
  CHECK_THROWS_AS(scalar_curvature(s, point({0.21, 1.0})), DomainError);
  MetricField bad = flat_metric(2);
  bad.components = [](const ChartPoint&) {
    Matrix g(2, 2);
    g << 1.0, 0.0, 0.0, -1.0;
    return g;
  };
  CHECK_THROWS_AS(christoffel(bad, point({0.0, 0.0})), DomainError);
  CHECK_THROWS_AS(cylinder_metric(2, 1.0), DomainError);
}
