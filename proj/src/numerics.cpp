#include "pseudocyl/numerics.hpp"

#include "pseudocyl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

namespace pseudocyl::numerics {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                 c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                 a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                 e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// continuous extension (Hairer, Norsett & Wanner)
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

bool all_finite(const State& y) { return y.allFinite(); }

double error_norm(const State& err, const State& y0, const State& y1,
                  double rtol, double atol) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc =
        atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sc;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

double initial_step(const Rhs& rhs, double t0, const State& y0,
                    const State& f0, double direction, double span,
                    double rtol, double atol) {
  const State sc =
      (atol + rtol * y0.array().abs()).matrix();
  const double dnf = (f0.array() / sc.array()).matrix().squaredNorm();
  const double dny = (y0.array() / sc.array()).matrix().squaredNorm();
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6
                                            : std::sqrt(dny / dnf) * 0.01;
  h = std::min(h, span);
  const State y1 = y0 + direction * h * f0;
  const State f1 = rhs(t0 + direction * h, y1);
  const double der2 =
      std::sqrt(((f1 - f0).array() / sc.array()).matrix().squaredNorm()) / h;
  const double der12 = std::max(der2, std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3)
                                   : std::pow(0.01 / der12, 1.0 / 5.0);
  return std::min({100.0 * h, h1, span});
}

}  // namespace

State Trajectory::operator()(double t) const {
  const double lo = std::min(t_.front(), t_.back());
  const double hi = std::max(t_.front(), t_.back());
  if (!(t >= lo && t <= hi)) {
    std::ostringstream os;
    os << "dense output requested at t=" << t << " outside [" << lo << ", "
       << hi << "]";
    throw DomainError(os.str());
  }
  const bool forward = t_.back() >= t_.front();
  auto it = forward ? std::lower_bound(t_.begin(), t_.end(), t)
                    : std::lower_bound(t_.begin(), t_.end(), t,
                                       std::greater<double>());
  if (it != t_.end() && *it == t) return y_[static_cast<std::size_t>(it - t_.begin())];
  const std::size_t step = static_cast<std::size_t>(it - t_.begin()) - 1;
  const double h = t_[step + 1] - t_[step];
  const double theta = (t - t_[step]) / h;
  const double theta1 = 1.0 - theta;
  const auto& r = dense_[step];
  return r[0] + theta * (r[1] + theta1 * (r[2] + theta * (r[3] + theta1 * r[4])));
}

Trajectory integrate_ivp(const Rhs& rhs, const State& y0, double t0, double t1,
                         double rel_tol, double abs_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0 && abs_tol > 0.0 && abs_tol < 1.0))
    throw DomainError("integrate_ivp: tolerances must lie in (0, 1)");
  if (!all_finite(y0)) throw DomainError("integrate_ivp: non-finite initial state");

  Trajectory traj;
  traj.t_.push_back(t0);
  traj.y_.push_back(y0);
  if (t1 == t0) return traj;

  const double direction = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  const double eps = std::numeric_limits<double>::epsilon();

  double t = t0;
  State y = y0;
  State k1 = rhs(t, y);
  double h = initial_step(rhs, t0, y0, k1, direction, span, rel_tol, abs_tol);
  bool last_rejected = false;

  while (direction * (t1 - t) > 0.0) {
    if (h < 16.0 * eps * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "integrate_ivp: step size underflow at t=" << t;
      throw NumericalError(os.str());
    }
    bool final_step = false;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      final_step = true;
    }
    const double dt = direction * h;
    const State k2 = rhs(t + c2 * dt, y + dt * (a21 * k1));
    const State k3 = rhs(t + c3 * dt, y + dt * (a31 * k1 + a32 * k2));
    const State k4 = rhs(t + c4 * dt, y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
    const State k5 = rhs(t + c5 * dt,
                         y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const State k6 = rhs(t + dt, y + dt * (a61 * k1 + a62 * k2 + a63 * k3 +
                                           a64 * k4 + a65 * k5));
    const State y_new =
        y + dt * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double t_new = final_step ? t1 : t + dt;
    const State k7 = rhs(t_new, y_new);
    if (!all_finite(y_new) || !all_finite(k7)) {
      std::ostringstream os;
      os << "integrate_ivp: non-finite state near t=" << t;
      throw NumericalError(os.str());
    }
    const State err =
        dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, y_new, rel_tol, abs_tol);

    if (en <= 1.0) {
      const State ydiff = y_new - y;
      const State bspl = dt * k1 - ydiff;
      std::array<State, 5> rc{
          y, ydiff, bspl, ydiff - dt * k7 - bspl,
          dt * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7)};
      traj.dense_.push_back(std::move(rc));
      traj.t_.push_back(t_new);
      traj.y_.push_back(y_new);
      t = t_new;
      y = y_new;
      k1 = k7;
      double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      if (last_rejected) fac = std::min(fac, 1.0);
      h *= fac;
      last_rejected = false;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      last_rejected = true;
    }
  }
  return traj;
}

double find_root(const std::function<double(double)>& f, Bracket bracket,
                 double tol) {
  double a = bracket.lo;
  double b = bracket.hi;
  if (!(a < b)) throw DomainError("find_root: bracket requires lo < hi");
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0.0) == (fb > 0.0))
    throw DomainError("find_root: function values at the bracket ends do not "
                      "change sign");

  const double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 500; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic interpolation, or secant when only two points
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw NumericalError("find_root: iteration limit reached");
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[static_cast<std::size_t>(j)] * fsum;
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * fsum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult quad_adaptive(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int max_evaluations) {
  if (!(tol > 0.0)) throw DomainError("quad_adaptive: tolerance must be positive");
  if (a == b) return {0.0, 0.0, 0};
  std::priority_queue<Segment> queue;
  Segment first = gk15(f, a, b);
  int evaluations = 15;
  double total = first.value;
  double error = first.error;
  queue.push(first);
  while (error > tol) {
    if (evaluations + 30 > max_evaluations) {
      std::ostringstream os;
      os << "quad_adaptive: tolerance " << tol
         << " not reached, achieved error estimate " << error;
      throw NumericalError(os.str());
    }
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    if (!std::isfinite(total))
      throw NumericalError("quad_adaptive: non-finite integrand value");
  }
  // re-sum to shed the drift of the running updates
  total = 0.0;
  error = 0.0;
  while (!queue.empty()) {
    total += queue.top().value;
    error += queue.top().error;
    queue.pop();
  }
  return {total, error, evaluations};
}

double quad_singular(const std::function<double(const SingularPoint&)>& f,
                     double a, double b, double tol) {
  if (!(a < b)) throw DomainError("quad_singular: requires a < b");
  const double width = b - a;
  auto integrand = [&](double s) {
    const double sn = std::sin(s);
    const double cs = std::cos(s);
    const SingularPoint p{a + width * sn * sn, width * sn * sn, width * cs * cs};
    return f(p) * 2.0 * width * sn * cs;
  };
  return quad_adaptive(integrand, 0.0, 0.5 * std::numbers::pi, tol).value;
}

double quad_singular(const std::function<double(double)>& f, double a,
                     double b, double tol) {
  return quad_singular([&](const SingularPoint& p) { return f(p.x); }, a, b,
                       tol);
}

}  // namespace pseudocyl::numerics
