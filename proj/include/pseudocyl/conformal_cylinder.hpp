#pragma once

#include "pseudocyl/geometry.hpp"
#include "pseudocyl/periodic_scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pseudocyl::conformal {

using geometry::ChartPoint;
using geometry::MetricField;
using geometry::TensorComponents;

/// Certification thresholds. Harmonic: Codazzi residual at or below
/// kHarmonicThreshold. Non-parallel: some |D Ric| at or above
/// kNonParallelThreshold. Parallel: every |D Ric| at or below
/// kParallelThreshold.
inline constexpr double kHarmonicThreshold = 1e-6;
inline constexpr double kNonParallelThreshold = 1e-3;
inline constexpr double kParallelThreshold = 1e-10;

/// u(t)^{4/(n-2)} (dt^2 + dxi^2) on S^1(T) x S^{n-1}.
class ConformalCylinderMetric {
 public:
  ConformalCylinderMetric(int n, double T, PeriodicScalar u);

  int n() const { return n_; }
  double T() const { return T_; }
  const PeriodicScalar& factor() const { return u_; }
  double exponent() const { return 4.0 / (n_ - 2.0); }

  /// The chart metric handed to the finite-difference oracle.
  MetricField assemble(double margin = 0.2) const;

 private:
  int n_;
  double T_;
  PeriodicScalar u_;
};

/// Derivatives of phi = (2/(n-2)) log u, so that the metric is e^{2 phi} g.
struct LogFactor {
  double d1, d2, d3;
};
LogFactor log_factor(int n, const Jet3& u);

/// Nonzero conformal corrections of the connection. Gamma^0_{jk} is
/// gamma0_jk_coeff * g_jk with g the product metric; the alternative
/// reading with the rescaled metric gives gamma0_jk_coeff_rescaled * g_jk.
struct ChristoffelClosed {
  double gamma0_00;
  double gamma_i_j0;
  double gamma0_jk_coeff;
  double gamma0_jk_coeff_rescaled;
  double gamma_i_00;
};
ChristoffelClosed christoffel_closed(const ConformalCylinderMetric& m, double t);
TensorComponents christoffel_closed_chart(const ConformalCylinderMetric& m,
                                          const ChartPoint& p);

/// Which expression to use for R_00.
enum class RicciFormula {
  /// Conformal transformation law: -2(n-1)/(n-2) (u''/u - u'^2/u^2).
  kTransformationLaw,
  /// The alternative display 2(n-1)/(n-2) (u''/u + u'^2/u^2); kept for
  /// auditing and for mutation testing of the oracle comparison.
  kAlternativeDisplay,
};
std::string to_string(RicciFormula f);

/// R_00, R_0i and the angular block R_ij = angular_coeff * g_ij.
struct RicciClosed {
  double r00;
  double r0i;
  double angular_coeff;
};
RicciClosed ricci_closed(const ConformalCylinderMetric& m, double t,
                         RicciFormula formula = RicciFormula::kTransformationLaw);
TensorComponents ricci_closed_chart(
    const ConformalCylinderMetric& m, const ChartPoint& p,
    RicciFormula formula = RicciFormula::kTransformationLaw);

double scalar_curvature_closed(const ConformalCylinderMetric& m, double t);

/// Labeled covariant derivative of the Ricci tensor. The angular entries
/// multiply g_ij. dt_r00 is the plain t-derivative of R_00; it differs from
/// d0_r00 by 2 Gamma^0_00 R_00.
struct DRicciClosed {
  double d0_r00;
  double d0_rij_coeff;
  double di_r0j_coeff;
  double dt_r00;
  double codazzi_coeff;
};
DRicciClosed dricci_closed(const ConformalCylinderMetric& m, double t);
TensorComponents dricci_closed_chart(const ConformalCylinderMetric& m,
                                     const ChartPoint& p);

/// A conformal factor u(t, xi) on the cylinder chart with analytic partials.
struct ChartFactor {
  std::function<double(const ChartPoint&)> value;
  std::function<Eigen::VectorXd(const ChartPoint&)> gradient;
  std::function<Eigen::MatrixXd(const ChartPoint&)> hessian;
};

/// R_00 and R_0i of u^{4/(n-2)} (dt^2 + dxi^2) for a factor depending on all
/// coordinates.
struct GeneralFactorRicci {
  double r00;
  Eigen::VectorXd r0i;
};
/// kAlternativeDisplay uses u_tt/u + u_t^2/u^2 for R_00 and the coefficient
/// (2n-1)/(n-2) instead of 2n/(n-2) in R_0i.
GeneralFactorRicci ricci_general_factor(
    int n, const ChartFactor& u, const ChartPoint& p,
    RicciFormula formula = RicciFormula::kTransformationLaw);

/// Both readings next to the finite-difference oracle at one point.
struct GeneralFactorDiscrepancy {
  GeneralFactorRicci law;
  GeneralFactorRicci alternative;
  GeneralFactorRicci oracle;
  double law_error;
  double alternative_error;
};
GeneralFactorDiscrepancy compare_general_factor(int n, const ChartFactor& u,
                                                const ChartPoint& p,
                                                double T = 1000.0);

struct GridSpec {
  int t_points = 64;
  int angular_points = 5;
  double angular_margin = 0.4;
};

/// t uniform on [0, T); all polar angles (and the azimuth) equal, sweeping
/// [margin, pi - margin].
std::vector<ChartPoint> grid_points(int n, double T, const GridSpec& grid);

struct Statistics {
  double mean = 0.0;
  double stddev = 0.0;
  double max_deviation = 0.0;  // max |x - target|
  double target = 0.0;
};
Statistics statistics(const std::vector<double>& xs, double target);

/// Closed form versus finite-difference oracle; each entry is
/// max |closed - oracle| / max(1, max |oracle|) over the points.
struct OracleAgreement {
  int points = 0;
  double christoffel = 0.0;
  double ricci = 0.0;
  double dricci = 0.0;
  double scalar = 0.0;
  double worst() const;
};

/// Relative deviation of a from reference b (max norm, floor 1).
double relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Deterministic pseudo-random interior points of the chart.
std::vector<ChartPoint> sample_points(int n, double T, int count,
                                      unsigned seed = 20240601u,
                                      double margin = 0.4);

OracleAgreement oracle_agreement(
    const ConformalCylinderMetric& m, const std::vector<ChartPoint>& points,
    RicciFormula formula = RicciFormula::kTransformationLaw);

struct CurvatureReport {
  std::string factor_label;
  int n = 0;
  double T = 0.0;
  GridSpec grid;

  Statistics scalar_closed;
  std::optional<Statistics> scalar_oracle;

  double codazzi_max = 0.0;
  ChartPoint codazzi_witness;
  double dricci_max = 0.0;
  ChartPoint dricci_witness;
  std::optional<double> weyl_max;
  std::optional<OracleAgreement> oracle;

  // audit of alternative readings, max over the grid
  double d0r00_shortcut_gap = 0.0;   // |D_0 R_00 - dR_00/dt|
  double alternative_r00_gap = 0.0;  // |R_00(alternative) - R_00(law)|
  double gamma0jk_rescaling_gap = 0.0;

  std::string laplacian_convention;
  std::string ricci_formula;

  bool harmonic() const { return codazzi_max <= kHarmonicThreshold; }
  bool parallel() const { return dricci_max <= kParallelThreshold; }
  bool nonparallel_certified() const { return dricci_max >= kNonParallelThreshold; }
};

/// Closed-form Codazzi residual over the grid plus scalar-curvature
/// constancy statistics.
CurvatureReport harmonicity_certificate(const ConformalCylinderMetric& m,
                                        const GridSpec& grid = {});
/// Closed-form max over the grid of |D Ric| measured with the conformal
/// metric.
CurvatureReport nonparallelism_certificate(const ConformalCylinderMetric& m,
                                           const GridSpec& grid = {});
/// Max oracle Weyl norm over the grid.
double weyl_vanishing_check(const ConformalCylinderMetric& m,
                            const GridSpec& grid = {});

struct ReportOptions {
  bool oracle_scalar = true;
  bool weyl = true;
  int oracle_points = 20;
  /// Convention established by calibrating the Yamabe residual on a
  /// verified solution; recorded in the report.
  std::optional<geometry::LaplacianConvention> laplacian;
};
/// Everything above in one record.
CurvatureReport curvature_report(const ConformalCylinderMetric& m,
                                 const GridSpec& grid = {},
                                 const ReportOptions& options = {});

}  // namespace pseudocyl::conformal
