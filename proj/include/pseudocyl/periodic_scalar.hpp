#pragma once

#include "pseudocyl/jet.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pseudocyl {

using Jet3 = Jet<double>;

/// Truncated real Fourier series of period T, fitted by trigonometric
/// interpolation of N uniform samples (N even). Derivatives of every order
/// are exact for the series.
class TrigSeries {
 public:
  TrigSeries(const std::vector<double>& samples, double period);

  double period() const { return period_; }
  std::size_t size() const { return n_samples_; }
  Jet3 jet(double t) const;
  double operator()(double t) const { return jet(t).v; }

  /// Mean value (constant Fourier coefficient).
  double mean() const { return a0_; }
  /// Exact integral over [0, t] of the series.
  double integral(double t) const;
  /// Magnitude of the highest retained harmonic relative to the largest one;
  /// small values mean the sampled function is resolved.
  double tail_ratio() const;

 private:
  double period_;
  std::size_t n_samples_;
  double a0_;
  Eigen::VectorXd cos_;  // a_1 .. a_{N/2}
  Eigen::VectorXd sin_;  // b_1 .. b_{N/2 - 1}, b_{N/2} = 0
};

/// A smooth, strictly positive, T-periodic function of one variable with
/// value and first three derivatives. Immutable after construction.
class PeriodicScalar {
 public:
  using Rule = std::function<Jet3(double)>;

  PeriodicScalar(double period, Rule rule, std::string label);

  static PeriodicScalar constant(double value, double period);
  static PeriodicScalar from_series(std::shared_ptr<const TrigSeries> series,
                                    std::string label);
  static PeriodicScalar interpolate(const std::vector<double>& samples,
                                    double period, std::string label);

  double period() const { return period_; }
  const std::string& label() const { return label_; }
  Jet3 jet(double t) const { return rule_(t); }
  double operator()(double t) const { return rule_(t).v; }

  /// Sample minimum/maximum of the value on a uniform grid.
  std::pair<double, double> range(int points = 512) const;

  /// Throws DomainError unless the value is strictly positive on a fine grid.
  void require_positive(int points = 512) const;

 private:
  double period_;
  Rule rule_;
  std::string label_;
};

}  // namespace pseudocyl
