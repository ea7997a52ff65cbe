#include "pseudocyl/correspondence.hpp"

#include "pseudocyl/errors.hpp"
#include "pseudocyl/derdzinski.hpp"
#include "pseudocyl/fowler.hpp"
#include "pseudocyl/geometry.hpp"
#include "pseudocyl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <variant>

namespace pseudocyl::correspondence {

namespace {

constexpr int kSpeedSamples = 512;

double hermite(double x0, double x1, double y0, double y1, double d0, double d1,
               double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

}  // namespace

WarpedMetric::WarpedMetric(double T_, PeriodicScalar f_, int fiber_dim_)
    : T(T_), f(std::move(f_)), fiber_dim(fiber_dim_) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw DomainError("warped metric: circle length must be positive");
  if (fiber_dim < 2) throw DomainError("warped metric: fiber dimension must be >= 2");
  if (std::abs(f.period() - T) > 1e-12 * T)
    throw DomainError("warped metric: warp period does not match the circle length");
  f.require_positive();
}

Reparametrization::Reparametrization(const WarpedMetric& w, int nodes)
    : T_(w.T), L_(0.0), f_(w.f) {
  if (nodes < 8) throw DomainError("reparametrization needs at least 8 nodes");
  std::vector<double> inv(kSpeedSamples);
  for (int k = 0; k < kSpeedSamples; ++k) inv[k] = 1.0 / w.f(k * T_ / kSpeedSamples);
  inverse_speed_ = std::make_shared<TrigSeries>(inv, T_);
  L_ = inverse_speed_->mean() * T_;

  t_nodes_.resize(nodes + 1);
  theta_nodes_.resize(nodes + 1);
  std::vector<double> dt_dtheta(nodes + 1);
  for (int k = 0; k <= nodes; ++k) {
    const double t = k * T_ / nodes;
    t_nodes_[k] = t;
    theta_nodes_[k] = k == nodes ? L_ : inverse_speed_->integral(t);
    dt_dtheta[k] = 1.0 / (*inverse_speed_)(t);
  }
  for (int k = 0; k < nodes; ++k) {
    if (!(theta_nodes_[k + 1] > theta_nodes_[k]))
      throw NumericalError("reparametrization table is not strictly increasing");
  }
  // Fritsch-Carlson limiter on the exact slopes keeps the interpolant monotone.
  slopes_ = dt_dtheta;
  for (int k = 0; k < nodes; ++k) {
    const double secant =
        (t_nodes_[k + 1] - t_nodes_[k]) / (theta_nodes_[k + 1] - theta_nodes_[k]);
    slopes_[k] = std::min(slopes_[k], 3.0 * secant);
    slopes_[k + 1] = std::min(slopes_[k + 1], 3.0 * secant);
  }
}

double Reparametrization::theta_of_t(double t) const {
  return inverse_speed_->integral(t);
}

double Reparametrization::t_of_theta(double theta) const {
  const double wraps = std::floor(theta / L_);
  double r = theta - wraps * L_;
  if (r >= L_) r = 0.0;
  const auto it = std::upper_bound(theta_nodes_.begin(), theta_nodes_.end(), r);
  const std::size_t k = std::clamp<std::size_t>(
      static_cast<std::size_t>(it - theta_nodes_.begin()), 1, theta_nodes_.size() - 1) - 1;
  double t = hermite(theta_nodes_[k], theta_nodes_[k + 1], t_nodes_[k], t_nodes_[k + 1],
                     slopes_[k], slopes_[k + 1], r);
  for (int i = 0; i < 4; ++i) {
    const double step = (inverse_speed_->integral(t) - r) / (*inverse_speed_)(t);
    t -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * T_) break;
  }
  return t + wraps * T_;
}

double Reparametrization::round_trip_error() const {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < t_nodes_.size(); ++k) {
    const double theta = 0.5 * (theta_nodes_[k] + theta_nodes_[k + 1]);
    worst = std::max(worst, std::abs(theta_of_t(t_of_theta(theta)) - theta));
    const double t = 0.5 * (t_nodes_[k] + t_nodes_[k + 1]);
    worst = std::max(worst, std::abs(t_of_theta(theta_of_t(t)) - t));
  }
  return worst;
}

Reparametrization arclength_reparametrize(const WarpedMetric& w, int nodes) {
  return Reparametrization(w, nodes);
}

double length_by_quadrature(const WarpedMetric& w, double tol) {
  const PeriodicScalar f = w.f;
  return numerics::quad_adaptive([&f](double t) { return 1.0 / f(t); }, 0.0, w.T, tol)
      .value;
}

std::string to_string(FiberConvention c) {
  return c == FiberConvention::kFiberDimension ? "fiber-dimension" : "total-dimension";
}

ConformalEquivalence warped_to_conformal(const WarpedMetric& w, int pullback_points) {
  auto reparam = std::make_shared<const Reparametrization>(w, 1024);
  const int n = w.fiber_dim + 1;
  const double L = reparam->length();
  const PeriodicScalar f = w.f;

  PeriodicScalar phi(
      L,
      [reparam, f](double theta) {
        const Jet3 fj = f.jet(reparam->t_of_theta(theta));
        return reparametrize(fj, fj);  // dt/dtheta = f
      },
      "phi[" + f.label() + "]");
  const double half = (n - 2.0) / 2.0;
  PeriodicScalar w_c(
      L, [phi, half](double theta) { return pow(phi.jet(theta), half); },
      "w_c[" + f.label() + "]");

  // Pull phi^2 (dtheta^2 + dxi^2) back along theta(t) and compare with
  // dt^2 + f^2 dxi^2 component by component.
  double worst = 0.0;
  for (const auto& p : conformal::sample_points(n, w.T, pullback_points)) {
    const double t = p[0];
    const Eigen::VectorXd sphere = geometry::sphere_diagonal(p.tail(n - 1));
    const double ft = f(t);
    const double ph = phi(reparam->theta_of_t(t));
    const double dtheta = 1.0 / ft;
    Eigen::VectorXd warped(n), pulled(n);
    warped[0] = 1.0;
    pulled[0] = ph * ph * dtheta * dtheta;
    warped.tail(n - 1) = ft * ft * sphere;
    pulled.tail(n - 1) = ph * ph * sphere;
    worst = std::max(worst, (warped - pulled).cwiseAbs().maxCoeff() /
                                warped.cwiseAbs().maxCoeff());
  }

  return {n, L, reparam, std::move(phi), std::move(w_c), worst, std::nullopt,
          std::nullopt};
}

namespace {

int fiber_dimension(const DerdzinskiParams& p, FiberConvention c) {
  return c == FiberConvention::kFiberDimension ? p.m : p.m - 1;
}

WarpedMetric derdzinski_warp_from(const DerdzinskiParams& p, FiberConvention c,
                                  double T, PeriodicScalar h) {
  derdzinski::validate(p);
  const int k = fiber_dimension(p, c);
  if (k < 2) throw DomainError("fiber convention leaves a fiber of dimension < 2");
  // r^2 g_{S^k} has scalar curvature k(k-1)/r^2 = R
  const double r = std::sqrt(k * (k - 1.0) / p.R);
  const double e = 2.0 / p.m;
  PeriodicScalar f(
      T, [h, r, e](double t) { return r * pow(h.jet(t), e); },
      "r h^{2/m} (" + to_string(c) + ")");
  return WarpedMetric(T, std::move(f), k);
}

ConformalEquivalence transport(const DerdzinskiParams& p, FiberConvention c,
                               const WarpedMetric& w) {
  ConformalEquivalence eq = warped_to_conformal(w);
  eq.source = p;
  eq.convention = c;
  return eq;
}

const DerdzinskiParams& derdzinski_params(const PeriodicOrbit& orbit) {
  const auto* p = std::get_if<DerdzinskiParams>(&orbit.params);
  if (p == nullptr) throw DomainError("orbit does not come from the Derdzinski equation");
  return *p;
}

}  // namespace

WarpedMetric derdzinski_warp(const PeriodicOrbit& orbit, FiberConvention convention) {
  return derdzinski_warp_from(derdzinski_params(orbit), convention, orbit.period,
                              orbit.factor);
}

WarpedMetric derdzinski_constant_warp(const DerdzinskiParams& p,
                                      FiberConvention convention, double T) {
  return derdzinski_warp_from(
      p, convention, T, PeriodicScalar::constant(derdzinski::derdzinski_constant(p), T));
}

ConformalEquivalence derdzinski_to_pseudocylindric(const PeriodicOrbit& orbit,
                                                   FiberConvention convention) {
  return transport(derdzinski_params(orbit), convention,
                   derdzinski_warp(orbit, convention));
}

ConformalEquivalence derdzinski_to_pseudocylindric(const DerdzinskiParams& p,
                                                   FiberConvention convention,
                                                   double T) {
  return transport(p, convention, derdzinski_constant_warp(p, convention, T));
}

IdentificationReport verify_identification(const ConformalEquivalence& eq, int n,
                                           const conformal::GridSpec& grid) {
  if (n != eq.n) {
    std::ostringstream os;
    os << "identification requested in dimension " << n << " but the equivalence has n = "
       << eq.n;
    throw DomainError(os.str());
  }
  IdentificationReport r;
  r.convention = eq.convention ? to_string(*eq.convention) : "none";
  r.m = eq.source ? eq.source->m : 0;
  r.n = n;
  r.L = eq.L;

  const conformal::ConformalCylinderMetric transported(n, eq.L, eq.w_c);
  const geometry::MetricField field = transported.assemble();
  const auto points = conformal::grid_points(n, eq.L, grid);
  std::vector<double> scalars;
  scalars.reserve(points.size());
  for (const auto& p : points) scalars.push_back(geometry::scalar_curvature(field, p));
  double mean = 0.0;
  for (double s : scalars) mean += s;
  mean /= static_cast<double>(scalars.size());
  const conformal::Statistics stats = conformal::statistics(scalars, mean);
  r.r_bar_mean = stats.mean;
  r.r_bar_stddev = stats.stddev;
  r.constant_scalar = stats.stddev <= 1e-6;

  const double nd = n;
  const double p_exp = (nd + 2.0) / (nd - 2.0);
  const double lin = (nd - 2.0) * (nd - 2.0) / 4.0;
  const double nonlin = r.r_bar_mean * (nd - 2.0) / (4.0 * (nd - 1.0));
  for (int k = 0; k < grid.t_points; ++k) {
    const Jet3 w = eq.w_c.jet(k * eq.L / grid.t_points);
    r.generalized_fowler_residual_max =
        std::max(r.generalized_fowler_residual_max,
                 std::abs(w.d2 - lin * w.v + nonlin * std::pow(w.v, p_exp)));
  }

  if (r.r_bar_mean > 0.0) {
    // lambda^2 g has scalar curvature R / lambda^2 = n(n-1)
    r.homothety_lambda = std::sqrt(r.r_bar_mean / (nd * (nd - 1.0)));
    const double scale = std::pow(r.homothety_lambda, (nd - 2.0) / 2.0);
    for (int k = 0; k < grid.t_points; ++k) {
      const Jet3 w = eq.w_c.jet(k * eq.L / grid.t_points);
      r.fowler_residual_max =
          std::max(r.fowler_residual_max,
                   std::abs(fowler::fowler_residual(n, scale * w.v, scale * w.d2)));
    }
    r.fowler = r.fowler_residual_max <= 1e-6;
  } else {
    r.fowler_residual_max = std::numeric_limits<double>::infinity();
  }

  r.codazzi_max = conformal::harmonicity_certificate(transported, grid).codazzi_max;
  r.dric_max = conformal::nonparallelism_certificate(transported, grid).dricci_max;
  r.harmonic = r.codazzi_max <= conformal::kHarmonicThreshold;
  r.nonparallel = r.dric_max >= conformal::kNonParallelThreshold;
  return r;
}

}  // namespace pseudocyl::correspondence
