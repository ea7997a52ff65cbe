#include "pseudocyl/fowler.hpp"

#include <numbers>
#include <sstream>

namespace pseudocyl::fowler {

double center_energy(int n) {
  return fowler_potential<double>(n)(constant_solution<double>(n));
}

double critical_period(int n) {
  require_dimension(n);
  return 2.0 * std::numbers::pi / std::sqrt(n - 2.0);
}

Oscillator fowler_oscillator(int n) {
  std::ostringstream name;
  name << "Fowler(n=" << n << ")";
  return Oscillator(fowler_potential<double>(n), constant_solution<double>(n),
                    name.str());
}

std::pair<double, double> turning_points(int n, double energy) {
  return fowler_oscillator(n).turning_points(energy);
}

double period_function(int n, double energy) {
  return fowler_oscillator(n).period(energy);
}

double return_time_period(int n, double energy) {
  return fowler_oscillator(n).return_time(energy);
}

PeriodicOrbit solve_period(int n, double T_target, int samples) {
  const double threshold = critical_period(n);
  if (!(T_target > threshold)) {
    std::ostringstream os;
    os.precision(10);
    os << "no nonconstant periodic solution: T = " << T_target
       << " does not exceed T1 = 2 pi / sqrt(n - 2) = " << threshold;
    throw BelowThresholdError(os.str(), threshold);
  }
  const Oscillator osc = fowler_oscillator(n);
  const double ec = osc.center_energy();
  const double scale = std::abs(ec);
  auto energy_at = [&](double x) { return ec + scale * x; };
  auto excess = [&](double x) { return osc.period(energy_at(x)) - T_target; };

  // grow the bracket geometrically away from the center, then toward 0-
  double lo = 1e-6;
  if (excess(lo) >= 0.0)
    throw NumericalError("solve_period: target period too close to T1 to bracket");
  double hi = lo;
  for (int iter = 0;; ++iter) {
    const double next = hi < 0.5 ? std::min(4.0 * hi, 0.5) : 1.0 - 0.5 * (1.0 - hi);
    if (iter > 200 || next >= 1.0)
      throw NumericalError("solve_period: could not bracket the target period");
    if (excess(next) >= 0.0) {
      hi = next;
      break;
    }
    lo = next;
    hi = next;
  }
  const double x = numerics::find_root(excess, {lo, hi}, 1e-15);
  return osc.orbit(energy_at(x), FowlerParams{n}, samples);
}

}  // namespace pseudocyl::fowler
