#pragma once

#include "pseudocyl/numerics.hpp"
#include "pseudocyl/periodic_scalar.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace pseudocyl {

/// V(x) = sum_k c_k x^{p_k} on x > 0, with all p_k > 0 so that V(0+) = 0.
template <typename Scalar>
struct PowerPotential {
  struct Term {
    Scalar coeff;
    Scalar power;
  };
  std::vector<Term> terms;

  Scalar operator()(Scalar x) const {
    using std::pow;
    Scalar v(0);
    for (const auto& t : terms) v += t.coeff * pow(x, t.power);
    return v;
  }
  Scalar derivative(Scalar x, int order) const {
    using std::pow;
    Scalar v(0);
    for (const auto& t : terms) {
      Scalar c = t.coeff;
      for (int i = 0; i < order; ++i) c *= t.power - Scalar(i);
      v += c * pow(x, t.power - Scalar(order));
    }
    return v;
  }
  /// V(x + delta) - V(x), accurate when delta is small relative to x.
  Scalar difference(Scalar x, Scalar delta) const {
    using std::expm1;
    using std::log1p;
    using std::pow;
    Scalar v(0);
    for (const auto& t : terms)
      v += t.coeff * pow(x, t.power) * expm1(t.power * log1p(delta / x));
    return v;
  }
};

struct FowlerParams {
  int n = 0;
};

struct DerdzinskiParams {
  int m = 0;
  double R = 0.0;
  double C = 0.0;
};

using OrbitParams = std::variant<FowlerParams, DerdzinskiParams>;

/// Nonconstant periodic solution x(t) of x'' = -V'(x), phase x(0) = x_min,
/// x'(0) = 0.
struct PeriodicOrbit {
  OrbitParams params;
  double energy = 0.0;
  double period = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> x_prime;
  /// x with x' from its own interpolant and x'', x''' from the ODE.
  PeriodicScalar factor;
  /// Plain trigonometric interpolant of the x samples; all derivatives
  /// spectral. Independent of the ODE, used for residual checks.
  std::shared_ptr<const TrigSeries> series;

  /// max |x'' + V'(x)| at the midpoints between samples, x'' taken from the
  /// plain interpolant.
  double max_residual() const;
  /// max |E(t_k) - E| over samples.
  double max_energy_deviation() const;
  double energy_stddev() const;

  PowerPotential<double> potential;
};

/// x(t) with x and x' from their interpolants and x'' = -V'(x),
/// x''' = -V''(x) x' from the equation of motion.
PeriodicScalar ode_factor(std::shared_ptr<const TrigSeries> x,
                          std::shared_ptr<const TrigSeries> x_prime,
                          PowerPotential<double> potential, std::string label);

/// One-degree-of-freedom Hamiltonian H = p^2/2 + V(x) on x > 0 with a single
/// well: V(0+) = 0, V' < 0 then > 0, V -> infinity. Closed orbits exist for
/// energies in (V(center), 0).
class Oscillator {
 public:
  Oscillator(PowerPotential<double> potential, double center, std::string name);

  const PowerPotential<double>& potential() const { return potential_; }
  double center() const { return center_; }
  double center_energy() const { return potential_(center_); }
  const std::string& name() const { return name_; }

  /// Roots x_min < center < x_max of V(x) = E.
  std::pair<double, double> turning_points(double energy) const;

  /// T(E) = 2 int_{x_min}^{x_max} dx / sqrt(2 (E - V(x))).
  double period(double energy, double tol = 1e-12) const;

  /// Period measured as the first return time of x' to zero from below,
  /// by direct integration; an independent check of period().
  double return_time(double energy) const;

  /// Integrate one period from (x_min, 0) and sample it uniformly.
  PeriodicOrbit orbit(double energy, OrbitParams params, int samples = 256) const;

  numerics::Rhs rhs() const;

 private:
  void require_window(double energy) const;

  PowerPotential<double> potential_;
  double center_;
  std::string name_;
};

}  // namespace pseudocyl
