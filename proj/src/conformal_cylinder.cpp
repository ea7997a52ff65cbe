#include "pseudocyl/conformal_cylinder.hpp"

#include "pseudocyl/errors.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>

namespace pseudocyl::conformal {

using geometry::Variance;

namespace {

Jet3 positive_jet(const PeriodicScalar& u, double t) {
  const Jet3 j = u.jet(t);
  if (!(j.v > 0.0)) {
    std::ostringstream os;
    os << "conformal factor '" << u.label() << "' is not positive at t=" << t;
    throw DomainError(os.str());
  }
  return j;
}

// Ricci of e^{2 phi}(dt^2 + g_S) is A dt^2 + B g_S.
struct RicciCoefficients {
  double a, b, a1, b1;
};

RicciCoefficients ricci_coefficients(int n, const LogFactor& phi) {
  const double nd = n;
  return {-(nd - 1.0) * phi.d2,
          (nd - 2.0) - phi.d2 - (nd - 2.0) * phi.d1 * phi.d1,
          -(nd - 1.0) * phi.d3,
          -phi.d3 - 2.0 * (nd - 2.0) * phi.d1 * phi.d2};
}

double alternative_r00(int n, const Jet3& u) {
  const double nd = n;
  return 2.0 * (nd - 1.0) / (nd - 2.0) * (u.d2 / u.v + u.d1 * u.d1 / (u.v * u.v));
}

}  // namespace

ConformalCylinderMetric::ConformalCylinderMetric(int n, double T, PeriodicScalar u)
    : n_(n), T_(T), u_(std::move(u)) {
  if (n < 3) throw DomainError("conformal cylinder metric needs n >= 3");
  if (!(T > 0.0)) throw DomainError("circle length T must be positive");
  if (std::abs(u_.period() - T) > 1e-12 * T)
    throw DomainError("factor period does not match the circle length");
  u_.require_positive();
}

MetricField ConformalCylinderMetric::assemble(double margin) const {
  const MetricField base = geometry::cylinder_metric(n_, T_, margin);
  MetricField m = geometry::conformal_metric(
      base, [u = u_](const ChartPoint& p) { return u(p[0]); }, exponent());
  m.label = "u^{4/(n-2)} cylinder, u = " + u_.label();
  return m;
}

LogFactor log_factor(int n, const Jet3& u) {
  const double c = 2.0 / (n - 2.0);
  const double r1 = u.d1 / u.v, r2 = u.d2 / u.v, r3 = u.d3 / u.v;
  return {c * r1, c * (r2 - r1 * r1), c * (r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1)};
}

ChristoffelClosed christoffel_closed(const ConformalCylinderMetric& m, double t) {
  const Jet3 u = positive_jet(m.factor(), t);
  const LogFactor phi = log_factor(m.n(), u);
  return {phi.d1, phi.d1, -phi.d1, -phi.d1 * std::pow(u.v, m.exponent()), 0.0};
}

TensorComponents christoffel_closed_chart(const ConformalCylinderMetric& m,
                                          const ChartPoint& p) {
  const int d = m.n();
  const ChristoffelClosed c = christoffel_closed(m, p[0]);
  const Eigen::VectorXd angles = p.tail(d - 1);
  const Eigen::VectorXd h = geometry::sphere_diagonal(angles);
  const TensorComponents sphere = geometry::sphere_christoffel(angles);
  TensorComponents gamma(3, d, {Variance::kUp, Variance::kDown, Variance::kDown}, p);
  gamma(0, 0, 0) = c.gamma0_00;
  for (int i = 1; i < d; ++i) {
    gamma(i, i, 0) = c.gamma_i_j0;
    gamma(i, 0, i) = c.gamma_i_j0;
    gamma(0, i, i) = c.gamma0_jk_coeff * h[i - 1];
    for (int j = 1; j < d; ++j)
      for (int k = 1; k < d; ++k) gamma(i, j, k) = sphere(i - 1, j - 1, k - 1);
  }
  return gamma;
}

std::string to_string(RicciFormula f) {
  switch (f) {
    case RicciFormula::kTransformationLaw:
      return "R00 = -2(n-1)/(n-2) (u''/u - u'^2/u^2) (conformal transformation law)";
    case RicciFormula::kAlternativeDisplay:
      return "R00 = 2(n-1)/(n-2) (u''/u + u'^2/u^2) (alternative display)";
  }
  return "unknown";
}

RicciClosed ricci_closed(const ConformalCylinderMetric& m, double t,
                         RicciFormula formula) {
  const Jet3 u = positive_jet(m.factor(), t);
  const RicciCoefficients rc = ricci_coefficients(m.n(), log_factor(m.n(), u));
  const double r00 =
      formula == RicciFormula::kTransformationLaw ? rc.a : alternative_r00(m.n(), u);
  return {r00, 0.0, rc.b};
}

TensorComponents ricci_closed_chart(const ConformalCylinderMetric& m,
                                    const ChartPoint& p, RicciFormula formula) {
  const int d = m.n();
  const RicciClosed r = ricci_closed(m, p[0], formula);
  const Eigen::VectorXd h = geometry::sphere_diagonal(p.tail(d - 1));
  TensorComponents out(2, d, {Variance::kDown, Variance::kDown}, p);
  out(0, 0) = r.r00;
  for (int i = 1; i < d; ++i) out(i, i) = r.angular_coeff * h[i - 1];
  return out;
}

double scalar_curvature_closed(const ConformalCylinderMetric& m, double t) {
  const Jet3 u = positive_jet(m.factor(), t);
  const RicciCoefficients rc = ricci_coefficients(m.n(), log_factor(m.n(), u));
  return std::pow(u.v, -m.exponent()) * (rc.a + (m.n() - 1.0) * rc.b);
}

DRicciClosed dricci_closed(const ConformalCylinderMetric& m, double t) {
  const Jet3 u = positive_jet(m.factor(), t);
  const LogFactor phi = log_factor(m.n(), u);
  const RicciCoefficients rc = ricci_coefficients(m.n(), phi);
  return {rc.a1 - 2.0 * phi.d1 * rc.a, rc.b1 - 2.0 * phi.d1 * rc.b,
          phi.d1 * (rc.a - rc.b), rc.a1, rc.b1 - phi.d1 * (rc.a + rc.b)};
}

TensorComponents dricci_closed_chart(const ConformalCylinderMetric& m,
                                     const ChartPoint& p) {
  const int d = m.n();
  const Jet3 u = positive_jet(m.factor(), p[0]);
  const RicciCoefficients rc = ricci_coefficients(d, log_factor(d, u));
  const TensorComponents gamma = christoffel_closed_chart(m, p);
  const TensorComponents ric = ricci_closed_chart(m, p);
  const Eigen::VectorXd angles = p.tail(d - 1);
  const Eigen::VectorXd h = geometry::sphere_diagonal(angles);

  // partial derivatives of the diagonal Ricci components
  auto dric = [&](int k, int i) -> double {
    if (k == 0) return i == 0 ? rc.a1 : rc.b1 * h[i - 1];
    if (i == 0) return 0.0;
    const int a = k - 1, idx = i - 1;
    if (a >= idx) return 0.0;
    return rc.b * 2.0 * h[idx] * std::cos(angles[a]) / std::sin(angles[a]);
  };

  TensorComponents out(3, d, std::vector<Variance>(3, Variance::kDown), p);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = i == j ? dric(k, i) : 0.0;
        v -= gamma(j, k, i) * ric(j, j) + gamma(i, k, j) * ric(i, i);
        out(k, i, j) = v;
      }
  return out;
}

GeneralFactorRicci ricci_general_factor(int n, const ChartFactor& u,
                                        const ChartPoint& p, RicciFormula formula) {
  if (n < 3) throw DomainError("ricci_general_factor: n must be >= 3");
  if (p.size() != n) throw DomainError("ricci_general_factor: point dimension != n");
  const double nd = n;
  const double v = u.value(p);
  if (!(v > 0.0)) throw DomainError("ricci_general_factor: factor must be positive");
  const Eigen::VectorXd du = u.gradient(p);
  const Eigen::MatrixXd ddu = u.hessian(p);
  const Eigen::VectorXd angles = p.tail(n - 1);
  const Eigen::VectorXd h = geometry::sphere_diagonal(angles);
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (!(h[i] > 1e-12))
      throw DomainError("ricci_general_factor: point too close to a chart pole");
  const TensorComponents sphere = geometry::sphere_christoffel(angles);

  GeneralFactorRicci out{0.0, Eigen::VectorXd::Zero(n - 1)};
  if (formula == RicciFormula::kTransformationLaw) {
    double grad_sq = du[0] * du[0];
    double lap = ddu(0, 0);
    for (int a = 1; a < n; ++a) {
      grad_sq += du[a] * du[a] / h[a - 1];
      double connection = 0.0;
      for (int c = 1; c < n; ++c) connection += sphere(c - 1, a - 1, a - 1) * du[c];
      lap += (ddu(a, a) - connection) / h[a - 1];
    }
    out.r00 = -2.0 * ddu(0, 0) / v + 2.0 * nd / (nd - 2.0) * du[0] * du[0] / (v * v) -
              2.0 / (nd - 2.0) * (grad_sq + v * lap) / (v * v);
    for (int i = 1; i < n; ++i)
      out.r0i[i - 1] = -2.0 * ddu(i, 0) / v + 2.0 * nd / (nd - 2.0) * du[i] * du[0] / (v * v);
  } else {
    out.r00 = 2.0 * (nd - 1.0) / (nd - 2.0) * (ddu(0, 0) / v + du[0] * du[0] / (v * v));
    for (int i = 1; i < n; ++i)
      out.r0i[i - 1] = -2.0 * ddu(i, 0) / v +
                       (2.0 * nd - 1.0) / (nd - 2.0) * du[i] * du[0] / (v * v);
  }
  return out;
}

namespace {

double general_error(const GeneralFactorRicci& a, const GeneralFactorRicci& b) {
  Eigen::VectorXd va(a.r0i.size() + 1), vb(b.r0i.size() + 1);
  va << a.r00, a.r0i;
  vb << b.r00, b.r0i;
  return relative_error(va, vb);
}

}  // namespace

GeneralFactorDiscrepancy compare_general_factor(int n, const ChartFactor& u,
                                                const ChartPoint& p, double T) {
  const MetricField metric = geometry::conformal_metric(
      geometry::cylinder_metric(n, T, 0.05), u.value);
  const TensorComponents ric = geometry::ricci(metric, p);
  GeneralFactorDiscrepancy out;
  out.law = ricci_general_factor(n, u, p, RicciFormula::kTransformationLaw);
  out.alternative = ricci_general_factor(n, u, p, RicciFormula::kAlternativeDisplay);
  out.oracle.r00 = ric(0, 0);
  out.oracle.r0i = Eigen::VectorXd(n - 1);
  for (int i = 1; i < n; ++i) out.oracle.r0i[i - 1] = 0.5 * (ric(0, i) + ric(i, 0));
  out.law_error = general_error(out.law, out.oracle);
  out.alternative_error = general_error(out.alternative, out.oracle);
  return out;
}

std::vector<ChartPoint> grid_points(int n, double T, const GridSpec& grid) {
  if (grid.t_points < 1 || grid.angular_points < 1)
    throw DomainError("grid needs at least one point per direction");
  std::vector<ChartPoint> pts;
  const double span = std::numbers::pi - 2.0 * grid.angular_margin;
  for (int it = 0; it < grid.t_points; ++it) {
    const double t = T * it / grid.t_points;
    for (int ia = 0; ia < grid.angular_points; ++ia) {
      const double angle =
          grid.angular_points == 1
              ? 0.5 * std::numbers::pi
              : grid.angular_margin + span * ia / (grid.angular_points - 1);
      ChartPoint p = ChartPoint::Constant(n, angle);
      p[0] = t;
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

Statistics statistics(const std::vector<double>& xs, double target) {
  Statistics s;
  s.target = target;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  for (double x : xs) {
    s.stddev += (x - s.mean) * (x - s.mean);
    s.max_deviation = std::max(s.max_deviation, std::abs(x - target));
  }
  s.stddev = std::sqrt(s.stddev / static_cast<double>(xs.size()));
  return s;
}

double OracleAgreement::worst() const {
  return std::max({christoffel, ricci, dricci, scalar});
}

double relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

std::vector<ChartPoint> sample_points(int n, double T, int count, unsigned seed,
                                      double margin) {
  std::mt19937 rng(seed);
  auto uniform = [&](double lo, double hi) {
    const double x = static_cast<double>(rng()) / 4294967296.0;
    return lo + (hi - lo) * x;
  };
  std::vector<ChartPoint> pts;
  for (int i = 0; i < count; ++i) {
    ChartPoint p(n);
    p[0] = uniform(0.0, T);
    for (int k = 1; k < n; ++k) {
      const bool azimuth = k == n - 1;
      p[k] = azimuth ? uniform(0.0, 2.0 * std::numbers::pi)
                     : uniform(margin, std::numbers::pi - margin);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

OracleAgreement oracle_agreement(const ConformalCylinderMetric& m,
                                 const std::vector<ChartPoint>& points,
                                 RicciFormula formula) {
  const MetricField metric = m.assemble();
  OracleAgreement agree;
  agree.points = static_cast<int>(points.size());
  for (const auto& p : points) {
    const TensorComponents g_or = geometry::christoffel(metric, p);
    const TensorComponents r_or = geometry::ricci(metric, p);
    const TensorComponents dr_or = geometry::ricci_covariant_derivative(metric, p);
    const double s_or = geometry::scalar_curvature(metric, p);
    agree.christoffel = std::max(
        agree.christoffel, relative_error(christoffel_closed_chart(m, p).values, g_or.values));
    agree.ricci = std::max(agree.ricci,
                           relative_error(ricci_closed_chart(m, p, formula).values, r_or.values));
    agree.dricci = std::max(
        agree.dricci, relative_error(dricci_closed_chart(m, p).values, dr_or.values));
    Eigen::VectorXd sc(1), so(1);
    sc[0] = scalar_curvature_closed(m, p[0]);
    so[0] = s_or;
    agree.scalar = std::max(agree.scalar, relative_error(sc, so));
  }
  return agree;
}

namespace {

CurvatureReport blank_report(const ConformalCylinderMetric& m, const GridSpec& grid) {
  CurvatureReport r;
  r.factor_label = m.factor().label();
  r.n = m.n();
  r.T = m.T();
  r.grid = grid;
  r.ricci_formula = to_string(RicciFormula::kTransformationLaw);
  r.laplacian_convention = "not calibrated";
  return r;
}

void fill_harmonicity(CurvatureReport& r, const ConformalCylinderMetric& m,
                      const std::vector<ChartPoint>& pts) {
  std::vector<double> scal;
  r.codazzi_max = -1.0;
  for (const auto& p : pts) {
    const double res = geometry::codazzi_residual(dricci_closed_chart(m, p));
    if (res > r.codazzi_max) {
      r.codazzi_max = res;
      r.codazzi_witness = p;
    }
    scal.push_back(scalar_curvature_closed(m, p[0]));
  }
  const double nd = m.n();
  r.scalar_closed = statistics(scal, nd * (nd - 1.0));
}

void fill_nonparallelism(CurvatureReport& r, const ConformalCylinderMetric& m,
                         const std::vector<ChartPoint>& pts) {
  r.dricci_max = -1.0;
  for (const auto& p : pts) {
    const double g = std::pow(m.factor()(p[0]), m.exponent());
    Eigen::VectorXd diag(m.n());
    diag << 1.0, geometry::sphere_diagonal(p.tail(m.n() - 1));
    const Eigen::MatrixXd metric = g * Eigen::MatrixXd(diag.asDiagonal());
    const double norm = geometry::tensor_norm(dricci_closed_chart(m, p), metric);
    if (norm > r.dricci_max) {
      r.dricci_max = norm;
      r.dricci_witness = p;
    }
  }
}

}  // namespace

CurvatureReport harmonicity_certificate(const ConformalCylinderMetric& m,
                                        const GridSpec& grid) {
  CurvatureReport r = blank_report(m, grid);
  fill_harmonicity(r, m, grid_points(m.n(), m.T(), grid));
  return r;
}

CurvatureReport nonparallelism_certificate(const ConformalCylinderMetric& m,
                                           const GridSpec& grid) {
  CurvatureReport r = blank_report(m, grid);
  fill_nonparallelism(r, m, grid_points(m.n(), m.T(), grid));
  return r;
}

double weyl_vanishing_check(const ConformalCylinderMetric& m, const GridSpec& grid) {
  const MetricField metric = m.assemble();
  double worst = 0.0;
  for (const auto& p : grid_points(m.n(), m.T(), grid))
    worst = std::max(worst, geometry::tensor_norm(geometry::weyl(metric, p), metric(p)));
  return worst;
}

CurvatureReport curvature_report(const ConformalCylinderMetric& m,
                                 const GridSpec& grid, const ReportOptions& options) {
  CurvatureReport r = blank_report(m, grid);
  const auto pts = grid_points(m.n(), m.T(), grid);
  fill_harmonicity(r, m, pts);
  fill_nonparallelism(r, m, pts);

  for (int i = 0; i < grid.t_points; ++i) {
    const double t = m.T() * i / grid.t_points;
    const DRicciClosed dr = dricci_closed(m, t);
    r.d0r00_shortcut_gap = std::max(r.d0r00_shortcut_gap, std::abs(dr.d0_r00 - dr.dt_r00));
    const double law = ricci_closed(m, t).r00;
    const double alt = ricci_closed(m, t, RicciFormula::kAlternativeDisplay).r00;
    r.alternative_r00_gap = std::max(r.alternative_r00_gap, std::abs(alt - law));
    const ChristoffelClosed c = christoffel_closed(m, t);
    r.gamma0jk_rescaling_gap = std::max(
        r.gamma0jk_rescaling_gap, std::abs(c.gamma0_jk_coeff_rescaled - c.gamma0_jk_coeff));
  }

  const MetricField metric = m.assemble();
  if (options.oracle_scalar) {
    std::vector<double> scal;
    for (const auto& p : pts) scal.push_back(geometry::scalar_curvature(metric, p));
    const double nd = m.n();
    r.scalar_oracle = statistics(scal, nd * (nd - 1.0));
  }
  if (options.weyl) {
    double worst = 0.0;
    for (const auto& p : pts)
      worst = std::max(worst, geometry::tensor_norm(geometry::weyl(metric, p), metric(p)));
    r.weyl_max = worst;
  }
  if (options.oracle_points > 0)
    r.oracle = oracle_agreement(m, sample_points(m.n(), m.T(), options.oracle_points));
  if (options.laplacian) r.laplacian_convention = geometry::to_string(*options.laplacian);
  return r;
}

}  // namespace pseudocyl::conformal
