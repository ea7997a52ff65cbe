#pragma once

#include "pseudocyl/errors.hpp"
#include "pseudocyl/oscillator.hpp"

#include <cmath>

namespace pseudocyl::fowler {

// Reduction of the Yamabe equation on S^1 x S^{n-1} (R(g0) = (n-1)(n-2),
// target R(g) = n(n-1)) to factors u(t):
//   u'' - ((n-2)^2/4) u + (n(n-2)/4) u^{(n+2)/(n-2)} = 0.

inline void require_dimension(int n) {
  if (n < 3) throw DomainError("Fowler equation needs n >= 3");
}

template <typename Scalar>
Scalar fowler_residual(int n, Scalar u, Scalar u_dd) {
  using std::pow;
  require_dimension(n);
  if (!(u > Scalar(0))) throw DomainError("fowler_residual: u must be positive");
  const Scalar nd(n);
  return u_dd - (nd - 2) * (nd - 2) / 4 * u +
         nd * (nd - 2) / 4 * pow(u, (nd + 2) / (nd - 2));
}

/// V(u) = ((n-2)^2/8) (u^{2n/(n-2)} - u^2).
template <typename Scalar>
PowerPotential<Scalar> fowler_potential(int n) {
  require_dimension(n);
  const Scalar nd(n);
  const Scalar c = (nd - 2) * (nd - 2) / 8;
  return {{{-c, Scalar(2)}, {c, 2 * nd / (nd - 2)}}};
}

/// E = u'^2/2 + V(u); conserved along solutions.
template <typename Scalar>
Scalar fowler_energy(int n, Scalar u, Scalar u_prime) {
  return u_prime * u_prime / 2 + fowler_potential<Scalar>(n)(u);
}

/// ubar = ((n-2)/n)^{(n-2)/4}, the cylinder up to homothety.
template <typename Scalar>
Scalar constant_solution(int n) {
  using std::pow;
  require_dimension(n);
  const Scalar nd(n);
  return pow((nd - 2) / nd, (nd - 2) / 4);
}

double center_energy(int n);

/// T1 = 2 pi / sqrt(n-2).
double critical_period(int n);

Oscillator fowler_oscillator(int n);

std::pair<double, double> turning_points(int n, double energy);

/// Period by singular quadrature.
double period_function(int n, double energy);

/// Period by integrating the ODE until the velocity returns to zero.
double return_time_period(int n, double energy);

/// Nonconstant solution with period T_target, phase u(0) = u_min.
/// Throws BelowThresholdError if T_target <= critical_period(n).
PeriodicOrbit solve_period(int n, double T_target, int samples = 256);

}  // namespace pseudocyl::fowler
