#pragma once

#include "pseudocyl/conformal_cylinder.hpp"
#include "pseudocyl/oscillator.hpp"
#include "pseudocyl/periodic_scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pseudocyl::correspondence {

/// dt^2 + f(t)^2 dxi^2 on S^1(T) x S^{fiber_dim} (unit round fiber).
struct WarpedMetric {
  double T;
  PeriodicScalar f;
  int fiber_dim;

  WarpedMetric(double T_, PeriodicScalar f_, int fiber_dim_);
};

/// theta(t) = int_0^t ds / f(s) and its inverse.
class Reparametrization {
 public:
  Reparametrization(const WarpedMetric& w, int nodes);

  double length() const { return L_; }
  double theta_of_t(double t) const;
  double t_of_theta(double theta) const;
  const std::vector<double>& t_nodes() const { return t_nodes_; }
  const std::vector<double>& theta_nodes() const { return theta_nodes_; }
  /// max over the node midpoints of |theta(t(theta)) - theta| and
  /// |t(theta(t)) - t|.
  double round_trip_error() const;

 private:
  double T_;
  double L_;
  PeriodicScalar f_;
  std::shared_ptr<const TrigSeries> inverse_speed_;
  std::vector<double> t_nodes_;
  std::vector<double> theta_nodes_;
  std::vector<double> slopes_;  // dt/dtheta at nodes, monotone-limited
};

Reparametrization arclength_reparametrize(const WarpedMetric& w, int nodes = 1024);

/// int_0^T dt / f by adaptive Gauss-Kronrod, independent of the series.
double length_by_quadrature(const WarpedMetric& w, double tol = 1e-13);

enum class FiberConvention {
  /// m is the fiber dimension: fiber S^m, total dimension m + 1.
  kFiberDimension,
  /// m is the total dimension: fiber S^{m-1}.
  kTotalDimension,
};
std::string to_string(FiberConvention c);

/// dt^2 + f^2 dxi^2 = phi(theta)^2 (dtheta^2 + dxi^2) with
/// w_c^{4/(n-2)} = phi^2.
struct ConformalEquivalence {
  int n;
  double L;
  std::shared_ptr<const Reparametrization> reparam;
  PeriodicScalar phi;
  PeriodicScalar w_c;
  /// max relative deviation of the two metric tensors after pullback
  double pullback_error;
  std::optional<DerdzinskiParams> source;
  std::optional<FiberConvention> convention;
};

ConformalEquivalence warped_to_conformal(const WarpedMetric& w, int pullback_points = 50);

/// Warped metric built from a Derdzinski orbit: f = r h^{2/m} over the unit
/// sphere, r chosen so that the fiber r^2 g_{S^k} has scalar curvature R.
WarpedMetric derdzinski_warp(const PeriodicOrbit& orbit, FiberConvention convention);

/// The constant solution h0 viewed as a warp of period T.
WarpedMetric derdzinski_constant_warp(const DerdzinskiParams& p,
                                      FiberConvention convention, double T);

ConformalEquivalence derdzinski_to_pseudocylindric(const PeriodicOrbit& orbit,
                                                   FiberConvention convention);
/// Cylindric case: the constant solution over a circle of length T.
ConformalEquivalence derdzinski_to_pseudocylindric(const DerdzinskiParams& p,
                                                   FiberConvention convention,
                                                   double T);

struct IdentificationReport {
  std::string convention;
  int m = 0;
  int n = 0;
  double L = 0.0;
  double r_bar_mean = 0.0;
  double r_bar_stddev = 0.0;
  double generalized_fowler_residual_max = 0.0;
  double homothety_lambda = 0.0;
  double fowler_residual_max = 0.0;  // after normalizing R to n(n-1)
  double codazzi_max = 0.0;
  double dric_max = 0.0;
  bool constant_scalar = false;
  bool fowler = false;
  bool harmonic = false;
  bool nonparallel = false;
  bool passed() const { return constant_scalar && fowler && harmonic && nonparallel; }
};

IdentificationReport verify_identification(const ConformalEquivalence& eq, int n,
                                           const conformal::GridSpec& grid = {});

}  // namespace pseudocyl::correspondence
