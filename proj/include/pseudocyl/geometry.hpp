#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace pseudocyl::geometry {

using ChartPoint = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Axis-aligned coordinate box. Periodic coordinates need no finite
/// difference clearance.
struct CoordinateBox {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  std::vector<bool> periodic;
};

/// A metric given in one chart: a symmetric positive definite matrix valued
/// function of the coordinates.
struct MetricField {
  int dim = 0;
  CoordinateBox domain;
  std::function<Matrix(const ChartPoint&)> components;
  Eigen::VectorXd fd_step;
  std::string label;

  Matrix operator()(const ChartPoint& p) const { return components(p); }
};

enum class Variance { kUp, kDown };

/// Components of a tensor at a point, stored flat in row-major index order.
struct TensorComponents {
  int rank = 0;
  int dim = 0;
  std::vector<Variance> variance;
  Eigen::VectorXd values;
  ChartPoint basepoint;

  TensorComponents() = default;
  TensorComponents(int rank_, int dim_, std::vector<Variance> variance_,
                   ChartPoint basepoint_);

  template <typename... I>
  double& operator()(I... idx) {
    return values[flat(static_cast<int>(idx)...)];
  }
  template <typename... I>
  double operator()(I... idx) const {
    return values[flat(static_cast<int>(idx)...)];
  }

  double max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }

 private:
  template <typename... I>
  Eigen::Index flat(I... idx) const {
    Eigen::Index k = 0;
    ((k = k * dim + idx), ...);
    return k;
  }
};

/// Default finite-difference step for the 6th-order central stencils. Up to
/// three stencils are nested (for D Ric), so the step balances h^6
/// truncation against epsilon / h^3 round-off.
double default_fd_step();

/// Levi-Civita connection Gamma^i_{jk} (rank 3, index order i, j, k).
TensorComponents christoffel(const MetricField& metric, const ChartPoint& p);

/// R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
///           + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj}.
TensorComponents riemann(const MetricField& metric, const ChartPoint& p);

/// R_{ijkl} = g_{im} R^m_{jkl}.
TensorComponents riemann_lowered(const MetricField& metric, const ChartPoint& p);

/// R_{jl} = R^k_{jkl}.
TensorComponents ricci(const MetricField& metric, const ChartPoint& p);

double scalar_curvature(const MetricField& metric, const ChartPoint& p);

/// D_k R_{ij} (index order k, i, j).
TensorComponents ricci_covariant_derivative(const MetricField& metric,
                                            const ChartPoint& p);

/// max over (k, i, j) of |D_k R_{ij} - D_i R_{kj}|.
double codazzi_residual(const TensorComponents& dricci);
double codazzi_residual(const MetricField& metric, const ChartPoint& p);

/// Weyl tensor W_{ijkl} (all indices down). The finite-difference Riemann
/// tensor is first projected onto the algebraic curvature tensors, so the
/// result is trace free and vanishes in dimension 3 to round-off.
TensorComponents weyl(const MetricField& metric, const ChartPoint& p);

/// Pointwise norm of an all-lower-index tensor, indices raised with g^{-1}.
double tensor_norm(const TensorComponents& lowered, const Matrix& metric);

/// Residuals of the algebraic Riemann symmetries at p.
struct RiemannSymmetryResiduals {
  double antisymmetry_last_pair;
  double antisymmetry_first_pair;
  double pair_symmetry;
  double first_bianchi;
};
RiemannSymmetryResiduals riemann_symmetry_residuals(const MetricField& metric,
                                                    const ChartPoint& p);

/// |d_j R - 2 g^{ik} D_k R_{ij}| maximized over j.
double contracted_bianchi_residual(const MetricField& metric, const ChartPoint& p);

/// Cylinder dt^2 + dxi^2 on S^1(T) x S^{n-1}. Chart: (t, theta_1, ...,
/// theta_{n-1}) with iterated spherical coordinates
/// dxi^2 = dtheta_1^2 + sin^2 theta_1 dtheta_2^2 + ...; the polar angles are
/// confined to [margin, pi - margin], the last angle is periodic.
MetricField cylinder_metric(int n, double T, double margin = 0.2);

/// Round unit sphere S^d in the same iterated chart (no circle factor).
MetricField sphere_metric(int d, double margin = 0.2);

/// Euclidean metric on a box.
MetricField flat_metric(int dim, double half_width = 10.0);

/// Angular block of the unit round sphere S^d metric at the given angles
/// (diagonal entries).
Eigen::VectorXd sphere_diagonal(const Eigen::VectorXd& angles);

/// Closed-form Christoffel symbols of the unit round sphere in the iterated
/// chart (rank 3, dimension d = angles.size()).
TensorComponents sphere_christoffel(const Eigen::VectorXd& angles);

/// u^exponent * base. exponent defaults to 4/(n-2) where n = base.dim.
using Factor = std::function<double(const ChartPoint&)>;
MetricField conformal_metric(const MetricField& base, Factor u);
MetricField conformal_metric(const MetricField& base, Factor u, double exponent);

/// Sign convention for the Laplacian in the Yamabe equation.
enum class LaplacianConvention {
  /// Delta = -div grad (nonnegative operator); the form
  /// 4(n-1)/(n-2) Delta u + R0 u - R u^{(n+2)/(n-2)} = 0 holds with it.
  kPositive,
  /// Delta = div grad (Laplace-Beltrami with its geometric sign).
  kLaplaceBeltrami,
};
std::string to_string(LaplacianConvention c);

/// Laplace-Beltrami (div grad) of u with respect to the metric, by
/// finite differences of u and the oracle connection.
double laplace_beltrami(const MetricField& metric, const Factor& u,
                        const ChartPoint& p);

/// 4(n-1)/(n-2) Delta u + (n-1)(n-2) u - n(n-1) u^{(n+2)/(n-2)} on the
/// cylinder S^1(T) x S^{n-1}, Delta according to the convention.
double yamabe_pde_residual(int n, const Factor& u, const ChartPoint& p,
                           LaplacianConvention convention,
                           double T = 1000.0);

/// Pick the Laplacian sign under which a known Yamabe solution u (scalar
/// curvature n(n-1) after rescaling) has the smaller residual at the given
/// points. Constant solutions cannot discriminate, so u must vary.
struct ConventionCalibration {
  LaplacianConvention chosen;
  double residual_positive;
  double residual_laplace_beltrami;
};
ConventionCalibration calibrate_laplacian_convention(
    int n, const Factor& u, const std::vector<ChartPoint>& points,
    double T = 1000.0);

/// Throws DomainError unless p lies inside the domain with room for `depth`
/// nested 6th-order stencils.
void require_interior(const MetricField& metric, const ChartPoint& p, int depth);

}  // namespace pseudocyl::geometry
