#include "pseudocyl/geometry.hpp"

#include "pseudocyl/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pseudocyl::geometry {

namespace {

constexpr double kMaxCondition = 1e12;

ChartPoint shifted(const ChartPoint& p, int k, double delta) {
  ChartPoint q = p;
  q[k] += delta;
  return q;
}

// 6th-order central difference of a vector valued function along axis k.
template <typename F>
Eigen::VectorXd central_difference(const F& f, const ChartPoint& p, int k,
                                   double h) {
  return (45.0 * (f(shifted(p, k, h)) - f(shifted(p, k, -h))) -
          9.0 * (f(shifted(p, k, 2.0 * h)) - f(shifted(p, k, -2.0 * h))) +
          (f(shifted(p, k, 3.0 * h)) - f(shifted(p, k, -3.0 * h)))) /
         (60.0 * h);
}

Matrix checked_inverse(const MetricField& metric, const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxCondition) {
    std::ostringstream os;
    os << "metric '" << metric.label
       << "' is not positive definite or is ill-conditioned (eigenvalues "
       << lo << " .. " << hi << ")";
    throw DomainError(os.str());
  }
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success)
    throw DomainError("metric '" + metric.label + "' failed Cholesky factorization");
  return llt.solve(Matrix::Identity(g.rows(), g.cols()));
}

TensorComponents from_flat(int rank, int dim, std::vector<Variance> var,
                           const ChartPoint& p, const Eigen::VectorXd& flat) {
  TensorComponents t(rank, dim, std::move(var), p);
  t.values = flat;
  return t;
}

// Raise every index of an all-lower tensor.
Eigen::VectorXd raise_all(const TensorComponents& t, const Matrix& ginv) {
  const int d = t.dim;
  Eigen::VectorXd cur = t.values;
  Eigen::Index stride = 1;
  for (int axis = t.rank - 1; axis >= 0; --axis) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(cur.size());
    for (Eigen::Index flat = 0; flat < cur.size(); ++flat) {
      const int idx = static_cast<int>((flat / stride) % d);
      const Eigen::Index base = flat - idx * stride;
      double sum = 0.0;
      for (int j = 0; j < d; ++j) sum += ginv(idx, j) * cur[base + j * stride];
      next[flat] = sum;
    }
    cur = std::move(next);
    stride *= d;
  }
  return cur;
}

}  // namespace

TensorComponents::TensorComponents(int rank_, int dim_,
                                   std::vector<Variance> variance_,
                                   ChartPoint basepoint_)
    : rank(rank_), dim(dim_), variance(std::move(variance_)),
      basepoint(std::move(basepoint_)) {
  Eigen::Index size = 1;
  for (int i = 0; i < rank; ++i) size *= dim;
  values = Eigen::VectorXd::Zero(size);
}

double default_fd_step() { return 4e-3; }

void require_interior(const MetricField& metric, const ChartPoint& p, int depth) {
  if (p.size() != metric.dim)
    throw DomainError("chart point dimension does not match the metric");
  for (int k = 0; k < metric.dim; ++k) {
    if (metric.domain.periodic[static_cast<std::size_t>(k)]) continue;
    const double clearance = 3.0 * depth * metric.fd_step[k];
    if (p[k] < metric.domain.lo[k] + clearance ||
        p[k] > metric.domain.hi[k] - clearance) {
      std::ostringstream os;
      os << "point coordinate " << k << " = " << p[k]
         << " too close to the chart boundary of '" << metric.label << "'";
      throw DomainError(os.str());
    }
  }
}

TensorComponents christoffel(const MetricField& metric, const ChartPoint& p) {
  require_interior(metric, p, 1);
  const int d = metric.dim;
  const Matrix g = metric(p);
  const Matrix ginv = checked_inverse(metric, g);
  std::vector<Matrix> dg(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    auto flat = [&](const ChartPoint& q) -> Eigen::VectorXd {
      const Matrix m = metric(q);
      return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
    };
    const Eigen::VectorXd v = central_difference(flat, p, k, metric.fd_step[k]);
    dg[static_cast<std::size_t>(k)] = Eigen::Map<const Matrix>(v.data(), d, d);
  }
  TensorComponents gamma(3, d, {Variance::kUp, Variance::kDown, Variance::kDown}, p);
  for (int j = 0; j < d; ++j) {
    for (int k = j; k < d; ++k) {
      Eigen::VectorXd lowered(d);
      for (int l = 0; l < d; ++l)
        lowered[l] = 0.5 * (dg[static_cast<std::size_t>(j)](l, k) +
                            dg[static_cast<std::size_t>(k)](j, l) -
                            dg[static_cast<std::size_t>(l)](j, k));
      const Eigen::VectorXd raised = ginv * lowered;
      for (int i = 0; i < d; ++i) {
        gamma(i, j, k) = raised[i];
        gamma(i, k, j) = raised[i];
      }
    }
  }
  return gamma;
}

TensorComponents riemann(const MetricField& metric, const ChartPoint& p) {
  require_interior(metric, p, 2);
  const int d = metric.dim;
  const TensorComponents gamma = christoffel(metric, p);
  auto flat = [&](const ChartPoint& q) { return christoffel(metric, q).values; };
  std::vector<TensorComponents> dgamma;
  for (int k = 0; k < d; ++k)
    dgamma.push_back(from_flat(3, d, gamma.variance, p,
                               central_difference(flat, p, k, metric.fd_step[k])));

  TensorComponents r(4, d,
                     {Variance::kUp, Variance::kDown, Variance::kDown, Variance::kDown},
                     p);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = k + 1; l < d; ++l) {
          double v = dgamma[static_cast<std::size_t>(k)](i, l, j) -
                     dgamma[static_cast<std::size_t>(l)](i, k, j);
          for (int m = 0; m < d; ++m)
            v += gamma(i, k, m) * gamma(m, l, j) - gamma(i, l, m) * gamma(m, k, j);
          r(i, j, k, l) = v;
          r(i, j, l, k) = -v;
        }
  return r;
}

TensorComponents riemann_lowered(const MetricField& metric, const ChartPoint& p) {
  const int d = metric.dim;
  const TensorComponents r = riemann(metric, p);
  const Matrix g = metric(p);
  TensorComponents out(4, d, std::vector<Variance>(4, Variance::kDown), p);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = 0.0;
          for (int m = 0; m < d; ++m) v += g(i, m) * r(m, j, k, l);
          out(i, j, k, l) = v;
        }
  return out;
}

TensorComponents ricci(const MetricField& metric, const ChartPoint& p) {
  const int d = metric.dim;
  const TensorComponents r = riemann(metric, p);
  TensorComponents out(2, d, {Variance::kDown, Variance::kDown}, p);
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) {
      double v = 0.0;
      for (int k = 0; k < d; ++k) v += r(k, j, k, l);
      out(j, l) = v;
    }
  return out;
}

double scalar_curvature(const MetricField& metric, const ChartPoint& p) {
  const TensorComponents ric = ricci(metric, p);
  const Matrix ginv = checked_inverse(metric, metric(p));
  double s = 0.0;
  for (int i = 0; i < metric.dim; ++i)
    for (int j = 0; j < metric.dim; ++j) s += ginv(i, j) * ric(i, j);
  return s;
}

TensorComponents ricci_covariant_derivative(const MetricField& metric,
                                            const ChartPoint& p) {
  require_interior(metric, p, 3);
  const int d = metric.dim;
  const TensorComponents ric = ricci(metric, p);
  const TensorComponents gamma = christoffel(metric, p);
  auto flat = [&](const ChartPoint& q) { return ricci(metric, q).values; };
  TensorComponents out(3, d, std::vector<Variance>(3, Variance::kDown), p);
  for (int k = 0; k < d; ++k) {
    const Eigen::VectorXd dk = central_difference(flat, p, k, metric.fd_step[k]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = dk[i * d + j];
        for (int l = 0; l < d; ++l)
          v -= gamma(l, k, i) * ric(l, j) + gamma(l, k, j) * ric(i, l);
        out(k, i, j) = v;
      }
  }
  return out;
}

double codazzi_residual(const TensorComponents& dricci) {
  const int d = dricci.dim;
  double worst = 0.0;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        worst = std::max(worst, std::abs(dricci(k, i, j) - dricci(i, k, j)));
  return worst;
}

double codazzi_residual(const MetricField& metric, const ChartPoint& p) {
  return codazzi_residual(ricci_covariant_derivative(metric, p));
}

TensorComponents weyl(const MetricField& metric, const ChartPoint& p) {
  const int d = metric.dim;
  const TensorComponents raw = riemann_lowered(metric, p);
  const Matrix g = metric(p);
  const Matrix ginv = checked_inverse(metric, g);

  // projection onto algebraic curvature tensors
  TensorComponents a = raw;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          a(i, j, k, l) = 0.25 * (raw(i, j, k, l) - raw(j, i, k, l) -
                                  raw(i, j, l, k) + raw(j, i, l, k));
  TensorComponents s = a;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          s(i, j, k, l) = 0.5 * (a(i, j, k, l) + a(k, l, i, j));
  TensorComponents r = s;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          r(i, j, k, l) =
              s(i, j, k, l) - (s(i, j, k, l) + s(i, k, l, j) + s(i, l, j, k)) / 3.0;

  Matrix ric = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l)
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) ric(j, l) += ginv(i, k) * r(i, j, k, l);
  const double scal = (ginv.array() * ric.array()).sum();

  TensorComponents w(4, d, std::vector<Variance>(4, Variance::kDown), p);
  const double dn = static_cast<double>(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double ricci_part = g(i, k) * ric(j, l) - g(i, l) * ric(j, k) +
                                    g(j, l) * ric(i, k) - g(j, k) * ric(i, l);
          const double metric_part = g(i, k) * g(j, l) - g(i, l) * g(j, k);
          w(i, j, k, l) = r(i, j, k, l) - ricci_part / (dn - 2.0) +
                          scal * metric_part / ((dn - 1.0) * (dn - 2.0));
        }
  return w;
}

double tensor_norm(const TensorComponents& lowered, const Matrix& metric) {
  const Matrix ginv = metric.inverse();
  const Eigen::VectorXd raised = raise_all(lowered, ginv);
  const double sq = lowered.values.dot(raised);
  return std::sqrt(std::max(sq, 0.0));
}

RiemannSymmetryResiduals riemann_symmetry_residuals(const MetricField& metric,
                                                    const ChartPoint& p) {
  const int d = metric.dim;
  const TensorComponents up = riemann(metric, p);
  const Matrix g = metric(p);
  TensorComponents r(4, d, std::vector<Variance>(4, Variance::kDown), p);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = 0.0;
          for (int m = 0; m < d; ++m) v += g(i, m) * up(m, j, k, l);
          r(i, j, k, l) = v;
        }
  RiemannSymmetryResiduals res{0, 0, 0, 0};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          res.antisymmetry_last_pair = std::max(
              res.antisymmetry_last_pair, std::abs(up(i, j, k, l) + up(i, j, l, k)));
          res.antisymmetry_first_pair = std::max(
              res.antisymmetry_first_pair, std::abs(r(i, j, k, l) + r(j, i, k, l)));
          res.pair_symmetry =
              std::max(res.pair_symmetry, std::abs(r(i, j, k, l) - r(k, l, i, j)));
          res.first_bianchi = std::max(
              res.first_bianchi,
              std::abs(up(i, j, k, l) + up(i, k, l, j) + up(i, l, j, k)));
        }
  return res;
}

double contracted_bianchi_residual(const MetricField& metric, const ChartPoint& p) {
  require_interior(metric, p, 3);
  const int d = metric.dim;
  const TensorComponents dric = ricci_covariant_derivative(metric, p);
  const Matrix ginv = checked_inverse(metric, metric(p));
  auto scal = [&](const ChartPoint& q) {
    Eigen::VectorXd v(1);
    v[0] = scalar_curvature(metric, q);
    return v;
  };
  double worst = 0.0;
  for (int j = 0; j < d; ++j) {
    const double dr = central_difference(scal, p, j, metric.fd_step[j])[0];
    double div = 0.0;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) div += ginv(i, k) * dric(k, i, j);
    worst = std::max(worst, std::abs(dr - 2.0 * div));
  }
  return worst;
}

Eigen::VectorXd sphere_diagonal(const Eigen::VectorXd& angles) {
  const Eigen::Index d = angles.size();
  Eigen::VectorXd h(d);
  double prod = 1.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    h[k] = prod;
    const double s = std::sin(angles[k]);
    prod *= s * s;
  }
  return h;
}

TensorComponents sphere_christoffel(const Eigen::VectorXd& angles) {
  const int d = static_cast<int>(angles.size());
  const Eigen::VectorXd h = sphere_diagonal(angles);
  TensorComponents gamma(3, d, {Variance::kUp, Variance::kDown, Variance::kDown},
                         angles);
  for (int j = 0; j < d; ++j) {
    const double cot = std::cos(angles[j]) / std::sin(angles[j]);
    for (int k = j + 1; k < d; ++k) {
      gamma(k, k, j) = cot;
      gamma(k, j, k) = cot;
      gamma(j, k, k) = -h[k] / h[j] * cot;
    }
  }
  return gamma;
}

namespace {

MetricField product_with_sphere(int circle_dims, int sphere_dim, double T,
                                double margin, std::string label) {
  if (sphere_dim < 1) throw DomainError("sphere factor needs dimension >= 1");
  if (!(margin > 0.0 && margin < 1.0))
    throw DomainError("sphere chart margin must lie in (0, 1)");
  const int dim = circle_dims + sphere_dim;
  MetricField m;
  m.dim = dim;
  m.label = std::move(label);
  m.domain.lo = Eigen::VectorXd::Zero(dim);
  m.domain.hi = Eigen::VectorXd::Zero(dim);
  m.domain.periodic.assign(static_cast<std::size_t>(dim), false);
  for (int k = 0; k < circle_dims; ++k) {
    m.domain.hi[k] = T;
    m.domain.periodic[static_cast<std::size_t>(k)] = true;
  }
  for (int k = circle_dims; k < dim; ++k) {
    const bool azimuth = k == dim - 1;
    m.domain.lo[k] = azimuth ? 0.0 : margin;
    m.domain.hi[k] = azimuth ? 2.0 * std::numbers::pi : std::numbers::pi - margin;
    m.domain.periodic[static_cast<std::size_t>(k)] = azimuth;
  }
  m.fd_step = Eigen::VectorXd::Constant(dim, default_fd_step());
  m.components = [circle_dims, sphere_dim](const ChartPoint& p) {
    Eigen::VectorXd diag(circle_dims + sphere_dim);
    diag.head(circle_dims).setOnes();
    diag.tail(sphere_dim) = sphere_diagonal(p.tail(sphere_dim));
    return Matrix(diag.asDiagonal());
  };
  return m;
}

}  // namespace

MetricField cylinder_metric(int n, double T, double margin) {
  if (n < 3) throw DomainError("cylinder_metric: n must be >= 3");
  if (!(T > 0.0)) throw DomainError("cylinder_metric: T must be positive");
  std::ostringstream label;
  label << "cylinder S^1(" << T << ") x S^" << n - 1;
  return product_with_sphere(1, n - 1, T, margin, label.str());
}

MetricField sphere_metric(int d, double margin) {
  std::ostringstream label;
  label << "unit sphere S^" << d;
  return product_with_sphere(0, d, 1.0, margin, label.str());
}

MetricField flat_metric(int dim, double half_width) {
  MetricField m;
  m.dim = dim;
  m.label = "euclidean";
  m.domain.lo = Eigen::VectorXd::Constant(dim, -half_width);
  m.domain.hi = Eigen::VectorXd::Constant(dim, half_width);
  m.domain.periodic.assign(static_cast<std::size_t>(dim), false);
  m.fd_step = Eigen::VectorXd::Constant(dim, default_fd_step());
  m.components = [dim](const ChartPoint&) { return Matrix::Identity(dim, dim); };
  return m;
}

MetricField conformal_metric(const MetricField& base, Factor u, double exponent) {
  MetricField m = base;
  m.label = "conformal(" + base.label + ")";
  m.components = [base_components = base.components, u = std::move(u),
                  exponent](const ChartPoint& p) {
    const double value = u(p);
    if (!(value > 0.0)) throw DomainError("conformal factor must be positive");
    return Matrix(std::pow(value, exponent) * base_components(p));
  };
  return m;
}

MetricField conformal_metric(const MetricField& base, Factor u) {
  if (base.dim < 3)
    throw DomainError("conformal_metric: default exponent needs dimension >= 3");
  return conformal_metric(base, std::move(u), 4.0 / (base.dim - 2.0));
}

std::string to_string(LaplacianConvention c) {
  switch (c) {
    case LaplacianConvention::kPositive:
      return "Delta = -div grad (nonnegative operator)";
    case LaplacianConvention::kLaplaceBeltrami:
      return "Delta = div grad (Laplace-Beltrami)";
  }
  return "unknown";
}

double laplace_beltrami(const MetricField& metric, const Factor& u,
                        const ChartPoint& p) {
  require_interior(metric, p, 2);
  const int d = metric.dim;
  const Matrix ginv = checked_inverse(metric, metric(p));
  const TensorComponents gamma = christoffel(metric, p);
  auto scalar = [&](const ChartPoint& q) {
    Eigen::VectorXd v(1);
    v[0] = u(q);
    return v;
  };
  Eigen::VectorXd grad(d);
  Matrix hess(d, d);
  for (int a = 0; a < d; ++a) {
    const double h = metric.fd_step[a];
    grad[a] = central_difference(scalar, p, a, h)[0];
    // differences taken against the center value to limit cancellation
    const double u0 = u(p);
    const double near = (u(shifted(p, a, h)) - u0) + (u(shifted(p, a, -h)) - u0);
    const double far = (u(shifted(p, a, 2 * h)) - u0) + (u(shifted(p, a, -2 * h)) - u0);
    hess(a, a) = (16.0 * near - far) / (12.0 * h * h);
  }
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      auto da = [&](const ChartPoint& q) {
        return central_difference(scalar, q, a, metric.fd_step[a]);
      };
      hess(a, b) = hess(b, a) = central_difference(da, p, b, metric.fd_step[b])[0];
    }
  double lap = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double connection = 0.0;
      for (int c = 0; c < d; ++c) connection += gamma(c, a, b) * grad[c];
      lap += ginv(a, b) * (hess(a, b) - connection);
    }
  return lap;
}

double yamabe_pde_residual(int n, const Factor& u, const ChartPoint& p,
                           LaplacianConvention convention, double T) {
  const MetricField cyl = cylinder_metric(n, T, 0.05);
  const double nd = static_cast<double>(n);
  const double value = u(p);
  if (!(value > 0.0)) throw DomainError("yamabe_pde_residual: u must be positive");
  const double lb = laplace_beltrami(cyl, u, p);
  const double delta = convention == LaplacianConvention::kPositive ? -lb : lb;
  return 4.0 * (nd - 1.0) / (nd - 2.0) * delta + (nd - 1.0) * (nd - 2.0) * value -
         nd * (nd - 1.0) * std::pow(value, (nd + 2.0) / (nd - 2.0));
}

}  // namespace pseudocyl::geometry

namespace pseudocyl::geometry {

ConventionCalibration calibrate_laplacian_convention(
    int n, const Factor& u, const std::vector<ChartPoint>& points, double T) {
  if (points.empty()) throw DomainError("calibration needs at least one point");
  ConventionCalibration c{LaplacianConvention::kPositive, 0.0, 0.0};
  for (const auto& p : points) {
    c.residual_positive = std::max(
        c.residual_positive,
        std::abs(yamabe_pde_residual(n, u, p, LaplacianConvention::kPositive, T)));
    c.residual_laplace_beltrami = std::max(
        c.residual_laplace_beltrami,
        std::abs(yamabe_pde_residual(n, u, p, LaplacianConvention::kLaplaceBeltrami, T)));
  }
  c.chosen = c.residual_positive <= c.residual_laplace_beltrami
                 ? LaplacianConvention::kPositive
                 : LaplacianConvention::kLaplaceBeltrami;
  return c;
}

}  // namespace pseudocyl::geometry
