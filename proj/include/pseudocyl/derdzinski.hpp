#pragma once

#include "pseudocyl/errors.hpp"
#include "pseudocyl/oscillator.hpp"

#include <cmath>

namespace pseudocyl::derdzinski {

// Warp equation for dt^2 + h^{4/m}(t) g0 over an Einstein fiber:
//   h'' - (m R / (4(m-1))) h^{1-4/m} = -(m/4) C h.

void validate(const DerdzinskiParams& p);

template <typename Scalar>
Scalar derdzinski_residual(const DerdzinskiParams& p, Scalar h, Scalar h_dd) {
  using std::pow;
  validate(p);
  if (!(h > Scalar(0))) throw DomainError("derdzinski_residual: h must be positive");
  const Scalar m(p.m), R(p.R), C(p.C);
  return h_dd - m * R / (4 * (m - 1)) * pow(h, 1 - 4 / m) + m / 4 * C * h;
}

/// V(h) = -(m^2 R / (8(m-1)(m-2))) h^{(2m-4)/m} + (m C / 8) h^2.
template <typename Scalar>
PowerPotential<Scalar> derdzinski_potential(const DerdzinskiParams& p) {
  validate(p);
  const Scalar m(p.m), R(p.R), C(p.C);
  return {{{-m * m * R / (8 * (m - 1) * (m - 2)), (2 * m - 4) / m},
           {m * C / 8, Scalar(2)}}};
}

template <typename Scalar>
Scalar derdzinski_energy(const DerdzinskiParams& p, Scalar h, Scalar h_prime) {
  return h_prime * h_prime / 2 + derdzinski_potential<Scalar>(p)(h);
}

/// h0 = (R / (C (m-1)))^{m/4}.
double derdzinski_constant(const DerdzinskiParams& p);

double center_energy(const DerdzinskiParams& p);

/// Linearization at h0 gives v'' = -C v, period 2 pi / sqrt(C).
double small_oscillation_period(const DerdzinskiParams& p);

Oscillator derdzinski_oscillator(const DerdzinskiParams& p);

double period(const DerdzinskiParams& p, double energy);

/// Periodic solution at absolute energy E in (center_energy, 0); throws
/// DegenerateOrbitError outside that window.
PeriodicOrbit solve_derdzinski_periodic(const DerdzinskiParams& p, double energy,
                                        int samples = 256);

}  // namespace pseudocyl::derdzinski
