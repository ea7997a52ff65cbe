#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace pseudocyl::numerics {

using State = Eigen::VectorXd;
using Rhs = std::function<State(double t, const State& y)>;

/// Result of an adaptive Dormand-Prince 5(4) integration. Accepted steps are
/// stored together with the coefficients of the 4th-order continuous
/// extension, so the solution can be evaluated anywhere in the span.
class Trajectory {
 public:
  const std::vector<double>& t_samples() const { return t_; }
  const std::vector<State>& y_samples() const { return y_; }
  double t_begin() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  std::size_t steps() const { return t_.size() - 1; }

  /// Dense output. Exact at the stored sample times.
  State operator()(double t) const;

 private:
  friend Trajectory integrate_ivp(const Rhs&, const State&, double, double,
                                  double, double);
  std::vector<double> t_;
  std::vector<State> y_;
  // five coefficient vectors per step
  std::vector<std::array<State, 5>> dense_;
};

/// Embedded adaptive Runge-Kutta (Dormand-Prince 5(4)) from t0 to t1.
/// Throws NumericalError on step-size underflow or a non-finite state.
Trajectory integrate_ivp(const Rhs& rhs, const State& y0, double t0, double t1,
                         double rel_tol = 1e-12, double abs_tol = 1e-13);

struct Bracket {
  double lo;
  double hi;
};

/// Brent's method on a sign-changing bracket. Terminates once the bracket
/// width falls below tol (or f hits zero exactly).
double find_root(const std::function<double(double)>& f, Bracket bracket,
                 double tol = 1e-14);

struct QuadratureResult {
  double value;
  double error_estimate;
  int evaluations;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b] with absolute
/// tolerance. Throws NumericalError (with the achieved estimate) if the
/// evaluation budget runs out.
QuadratureResult quad_adaptive(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int max_evaluations = 200000);

/// Location inside [a, b] handed to singular integrands: the abscissa itself
/// and its distances to both endpoints, computed without cancellation.
struct SingularPoint {
  double x;
  double from_lo;
  double from_hi;
};

/// Integral over [a, b] of an integrand with at worst inverse-square-root
/// singularities at the endpoints. Uses x = a + (b - a) sin^2(s), which turns
/// both endpoint singularities into smooth behaviour in s.
double quad_singular(const std::function<double(double)>& f, double a,
                     double b, double tol);
double quad_singular(const std::function<double(const SingularPoint&)>& f,
                     double a, double b, double tol);

}  // namespace pseudocyl::numerics
