#pragma once

#include <cmath>

namespace pseudocyl {

/// Value of a scalar function of one variable together with its first three
/// derivatives. Arithmetic propagates the derivatives exactly (truncated
/// Taylor arithmetic), which is how composite factors such as h^{2/m} or
/// phi^{(n-2)/2} get analytic derivatives.
template <typename Scalar>
struct Jet {
  Scalar v{};
  Scalar d1{};
  Scalar d2{};
  Scalar d3{};

  static Jet constant(Scalar c) { return {c, Scalar(0), Scalar(0), Scalar(0)}; }
};

template <typename Scalar>
Jet<Scalar> operator+(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

template <typename Scalar>
Jet<Scalar> operator*(Scalar c, const Jet<Scalar>& a) {
  return {c * a.v, c * a.d1, c * a.d2, c * a.d3};
}

template <typename Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + Scalar(2) * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + Scalar(3) * a.d2 * b.d1 + Scalar(3) * a.d1 * b.d2 +
              a.v * b.d3};
}

/// Compose an outer function, given by its value and three derivatives at
/// inner.v, with the inner jet (Faa di Bruno up to third order).
template <typename Scalar>
Jet<Scalar> compose(Scalar g0, Scalar g1, Scalar g2, Scalar g3,
                    const Jet<Scalar>& inner) {
  const Scalar x1 = inner.d1, x2 = inner.d2, x3 = inner.d3;
  return {g0, g1 * x1, g2 * x1 * x1 + g1 * x2,
          g3 * x1 * x1 * x1 + Scalar(3) * g2 * x1 * x2 + g1 * x3};
}

/// a^p for a.v > 0.
template <typename Scalar>
Jet<Scalar> pow(const Jet<Scalar>& a, Scalar p) {
  using std::pow;
  const Scalar x = a.v;
  const Scalar g0 = pow(x, p);
  const Scalar g1 = p * pow(x, p - 1);
  const Scalar g2 = p * (p - 1) * pow(x, p - 2);
  const Scalar g3 = p * (p - 1) * (p - 2) * pow(x, p - 3);
  return compose(g0, g1, g2, g3, a);
}

/// Reparametrize a jet in t to a jet in theta, where dt/dtheta = speed(t).
/// speed is itself given as a jet in t.
template <typename Scalar>
Jet<Scalar> reparametrize(const Jet<Scalar>& g, const Jet<Scalar>& speed) {
  // d/dtheta = s d/dt
  const Scalar s = speed.v, s1 = speed.d1, s2 = speed.d2;
  const Scalar e1 = s * g.d1;
  const Scalar e2 = s * (s1 * g.d1 + s * g.d2);
  const Scalar e3 =
      s * (s2 * s * g.d1 + s1 * s1 * g.d1 + s1 * s * g.d2 +
           Scalar(2) * s * s1 * g.d2 + s * s * g.d3);
  return {g.v, e1, e2, e3};
}

}  // namespace pseudocyl
