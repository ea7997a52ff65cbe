#include "pseudocyl/periodic_scalar.hpp"

#include "pseudocyl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace pseudocyl {

TrigSeries::TrigSeries(const std::vector<double>& samples, double period)
    : period_(period), n_samples_(samples.size()) {
  const std::size_t n = samples.size();
  if (n < 4 || n % 2 != 0)
    throw DomainError("TrigSeries: need an even number (>= 4) of samples");
  if (!(period > 0.0)) throw DomainError("TrigSeries: period must be positive");
  const std::size_t half = n / 2;
  cos_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(half));
  sin_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(half));
  a0_ = 0.0;
  for (double y : samples) a0_ += y;
  a0_ /= static_cast<double>(n);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 1; k <= half; ++k) {
    double ak = 0.0, bk = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      // reduce k*j mod n so the angle stays exact
      const double angle = step * static_cast<double>((k * j) % n);
      ak += samples[j] * std::cos(angle);
      bk += samples[j] * std::sin(angle);
    }
    const double scale = (k == half ? 1.0 : 2.0) / static_cast<double>(n);
    cos_[static_cast<Eigen::Index>(k - 1)] = ak * scale;
    sin_[static_cast<Eigen::Index>(k - 1)] = k == half ? 0.0 : bk * scale;
  }
}

Jet3 TrigSeries::jet(double t) const {
  const double omega = 2.0 * std::numbers::pi / period_;
  const std::complex<double> step = std::polar(1.0, omega * std::fmod(t, period_));
  std::complex<double> z = 1.0;
  Jet3 out{a0_, 0.0, 0.0, 0.0};
  for (Eigen::Index k = 0; k < cos_.size(); ++k) {
    // refresh the rotation periodically to bound accumulated drift
    if (k % 32 == 31) {
      z = std::polar(1.0, omega * std::fmod(t, period_) * static_cast<double>(k + 1));
    } else {
      z *= step;
    }
    const double w = omega * static_cast<double>(k + 1);
    const double c = z.real(), s = z.imag();
    const double a = cos_[k], b = sin_[k];
    out.v += a * c + b * s;
    out.d1 += w * (b * c - a * s);
    out.d2 += -w * w * (a * c + b * s);
    out.d3 += w * w * w * (a * s - b * c);
  }
  return out;
}

double TrigSeries::integral(double t) const {
  const double omega = 2.0 * std::numbers::pi / period_;
  const double phase = omega * std::fmod(t, period_);
  const std::complex<double> step = std::polar(1.0, phase);
  std::complex<double> z = 1.0;
  double sum = a0_ * t;
  for (Eigen::Index k = 0; k < cos_.size(); ++k) {
    if (k % 32 == 31) {
      z = std::polar(1.0, phase * static_cast<double>(k + 1));
    } else {
      z *= step;
    }
    const double w = omega * static_cast<double>(k + 1);
    sum += cos_[k] * z.imag() / w + sin_[k] * (1.0 - z.real()) / w;
  }
  return sum;
}

double TrigSeries::tail_ratio() const {
  double peak = 0.0;
  for (Eigen::Index k = 0; k < cos_.size(); ++k)
    peak = std::max(peak, std::hypot(cos_[k], sin_[k]));
  if (peak == 0.0) return 0.0;
  const Eigen::Index last = cos_.size() - 1;
  return std::hypot(cos_[last], sin_[last]) / peak;
}

PeriodicScalar::PeriodicScalar(double period, Rule rule, std::string label)
    : period_(period), rule_(std::move(rule)), label_(std::move(label)) {
  if (!(period > 0.0) || !std::isfinite(period))
    throw DomainError("PeriodicScalar: period must be positive and finite");
}

PeriodicScalar PeriodicScalar::constant(double value, double period) {
  if (!(value > 0.0)) throw DomainError("PeriodicScalar: constant must be positive");
  return PeriodicScalar(
      period, [value](double) { return Jet3::constant(value); }, "constant");
}

PeriodicScalar PeriodicScalar::from_series(
    std::shared_ptr<const TrigSeries> series, std::string label) {
  const double period = series->period();
  PeriodicScalar out(
      period, [s = std::move(series)](double t) { return s->jet(t); },
      std::move(label));
  out.require_positive();
  return out;
}

PeriodicScalar PeriodicScalar::interpolate(const std::vector<double>& samples,
                                           double period, std::string label) {
  return from_series(std::make_shared<TrigSeries>(samples, period),
                     std::move(label));
}

std::pair<double, double> PeriodicScalar::range(int points) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < points; ++i) {
    const double v = (*this)(period_ * i / points);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

void PeriodicScalar::require_positive(int points) const {
  const auto [lo, hi] = range(points);
  if (!(lo > 0.0) || !std::isfinite(hi))
    throw DomainError("PeriodicScalar '" + label_ +
                      "' is not strictly positive and finite");
}

}  // namespace pseudocyl
