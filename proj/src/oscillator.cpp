#include "pseudocyl/oscillator.hpp"

#include "pseudocyl/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pseudocyl {

double PeriodicOrbit::max_residual() const {
  double worst = 0.0;
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double tm = period * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    const Jet3 j = series->jet(tm);
    worst = std::max(worst, std::abs(j.d2 + potential.derivative(j.v, 1)));
  }
  return worst;
}

double PeriodicOrbit::max_energy_deviation() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    worst = std::max(worst, std::abs(0.5 * x_prime[k] * x_prime[k] + potential(x[k]) - energy));
  return worst;
}

double PeriodicOrbit::energy_stddev() const {
  double mean = 0.0;
  std::vector<double> e;
  for (std::size_t k = 0; k < x.size(); ++k) {
    e.push_back(0.5 * x_prime[k] * x_prime[k] + potential(x[k]));
    mean += e.back();
  }
  mean /= static_cast<double>(e.size());
  double var = 0.0;
  for (double v : e) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(e.size()));
}

Oscillator::Oscillator(PowerPotential<double> potential, double center, std::string name)
    : potential_(std::move(potential)), center_(center), name_(std::move(name)) {
  if (!(center > 0.0)) throw DomainError("oscillator center must be positive");
}

void Oscillator::require_window(double energy) const {
  const double ec = center_energy();
  if (!(energy > ec && energy < 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << name_ << ": energy " << energy << " outside the closed-orbit window ("
       << ec << ", 0)";
    throw DegenerateOrbitError(os.str());
  }
}

std::pair<double, double> Oscillator::turning_points(double energy) const {
  require_window(energy);
  const double rise = energy - center_energy();
  // solve V(center + delta) - V(center) = rise on each side of the well
  auto g = [&](double delta) { return potential_.difference(center_, delta) - rise; };
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * center_;
  const double lo_delta = numerics::find_root(g, {-center_, 0.0}, tol);
  double hi = center_;
  while (g(hi) <= 0.0) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericalError("turning_points: no upper turning point");
  }
  const double hi_delta = numerics::find_root(g, {0.0, hi}, tol);
  return {center_ + lo_delta, center_ + hi_delta};
}

double Oscillator::period(double energy, double tol) const {
  const auto [a, b] = turning_points(energy);
  auto integrand = [&, a = a, b = b](const numerics::SingularPoint& p) {
    const double drop = p.from_lo <= p.from_hi
                            ? -potential_.difference(a, p.from_lo)
                            : -potential_.difference(b, -p.from_hi);
    if (!(drop > 0.0))
      throw NumericalError("period: kinetic energy vanished inside the orbit");
    return 1.0 / std::sqrt(2.0 * drop);
  };
  return 2.0 * numerics::quad_singular(integrand, a, b, 0.5 * tol);
}

numerics::Rhs Oscillator::rhs() const {
  return [pot = potential_](double, const numerics::State& y) {
    numerics::State dy(2);
    dy[0] = y[1];
    dy[1] = -pot.derivative(y[0], 1);
    return dy;
  };
}

namespace {

double crossing_time(const numerics::Trajectory& traj, bool rising, double after) {
  const auto& ts = traj.t_samples();
  const auto& ys = traj.y_samples();
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    if (ts[k + 1] <= after) continue;
    const double v0 = ys[k][1], v1 = ys[k + 1][1];
    const bool crosses = rising ? (v0 < 0.0 && v1 >= 0.0) : (v0 > 0.0 && v1 <= 0.0);
    if (!crosses) continue;
    if (v1 == 0.0) return ts[k + 1];
    return numerics::find_root([&](double t) { return traj(t)[1]; },
                               {ts[k], ts[k + 1]}, 1e-15);
  }
  throw NumericalError("return_time: no velocity sign change found");
}

}  // namespace

PeriodicScalar ode_factor(std::shared_ptr<const TrigSeries> x,
                          std::shared_ptr<const TrigSeries> x_prime,
                          PowerPotential<double> potential, std::string label) {
  if (std::abs(x->period() - x_prime->period()) > 1e-12 * x->period())
    throw DomainError("ode_factor: series periods differ");
  return PeriodicScalar(
      x->period(),
      [x, x_prime, pot = std::move(potential)](double t) {
        Jet3 j;
        j.v = (*x)(t);
        j.d1 = (*x_prime)(t);
        j.d2 = -pot.derivative(j.v, 1);
        j.d3 = -pot.derivative(j.v, 2) * j.d1;
        return j;
      },
      std::move(label));
}

double Oscillator::return_time(double energy) const {
  const auto [a, b] = turning_points(energy);
  const double estimate = period(energy);
  numerics::State y0(2);
  y0 << a, 0.0;
  const auto traj = numerics::integrate_ivp(rhs(), y0, 0.0, 1.5 * estimate);
  const double half = crossing_time(traj, false, 0.0);
  return crossing_time(traj, true, half);
}

PeriodicOrbit Oscillator::orbit(double energy, OrbitParams params, int samples) const {
  if (samples < 8 || samples % 2 != 0)
    throw DomainError("orbit: sample count must be even and at least 8");
  const auto [a, b] = turning_points(energy);
  const double T = period(energy);
  numerics::State y0(2);
  y0 << a, 0.0;
  const auto traj = numerics::integrate_ivp(rhs(), y0, 0.0, T, 1e-14, 1e-15);

  std::vector<double> ts, xs, vs;
  for (int k = 0; k < samples; ++k) {
    const double t = T * k / samples;
    const numerics::State y = traj(t);
    ts.push_back(t);
    xs.push_back(y[0]);
    vs.push_back(y[1]);
  }
  auto x_series = std::make_shared<const TrigSeries>(xs, T);
  auto v_series = std::make_shared<const TrigSeries>(vs, T);
  PeriodicScalar factor = ode_factor(x_series, v_series, potential_, name_ + " orbit");
  factor.require_positive();
  return PeriodicOrbit{std::move(params), energy, T, a, b, std::move(ts),
                       std::move(xs), std::move(vs), std::move(factor),
                       std::move(x_series), potential_};
}

}  // namespace pseudocyl
