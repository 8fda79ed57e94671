#pragma once

// Riemann-Liouville fractional calculus on uniform grids over [0, 1].
//
// Grid functions carry the regular part of a function; terms of the form
// c * t^beta that a piecewise-linear interpolant cannot resolve near t = 0
// travel separately as PowerFn and are integrated in closed form.

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace fracres {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Fractional order alpha of the boundary value problem, 1 < alpha <= 2.
class Order {
 public:
  explicit Order(double alpha);

  double alpha() const noexcept { return alpha_; }
  double alpha_m1() const noexcept { return alpha_ - 1.0; }
  double two_m_alpha() const noexcept { return 2.0 - alpha_; }

 private:
  double alpha_;
};

/// Samples of an R^n-valued function on the uniform grid t_j = j / N, j = 0..N.
///
/// Row j of values() holds the sample at t_j.
class GridFn {
 public:
  /// Empty placeholder; intervals() is -1 until assigned.
  GridFn() = default;
  GridFn(int intervals, int dim);
  explicit GridFn(Mat values);

  static GridFn sample(int intervals, int dim, const std::function<Vec(double)>& f);

  int intervals() const noexcept { return static_cast<int>(values_.rows()) - 1; }
  int dim() const noexcept { return static_cast<int>(values_.cols()); }
  double step() const noexcept { return 1.0 / intervals(); }
  double node(int j) const noexcept { return static_cast<double>(j) / intervals(); }

  const Mat& values() const noexcept { return values_; }
  Vec at(int j) const { return values_.row(j).transpose(); }

  /// Maximum over nodes of the Euclidean norm of the sample.
  double sup_norm() const;
  /// Composite trapezoid approximation of the L1([0,1]; R^n) norm.
  double l1_norm() const;

  GridFn& operator+=(const GridFn& other);
  GridFn& operator-=(const GridFn& other);
  GridFn& operator*=(double s);

  friend GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
  friend GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
  friend GridFn operator*(double s, GridFn a) { return a *= s; }

 private:
  Mat values_;
};

/// Exact representation of t -> coef * t^exponent.
struct PowerFn {
  Vec coef;
  double exponent = 0.0;

  Vec eval(double t) const;
  GridFn sample(int intervals) const;
};

/// Gamma function for x > 0. Throws DomainError otherwise.
double gamma(double x);

/// Gamma(beta+1) / Gamma(beta+alpha+1), the factor in I^alpha t^beta.
double power_rule(double beta, double alpha);

/// Product-trapezoidal Riemann-Liouville integral of order a at every node.
///
/// The integrand is replaced by its piecewise-linear interpolant and the
/// moments of (t_j - s)^(a-1) over each cell are taken in closed form.
GridFn frac_integral(const GridFn& y, double a);

/// Same quadrature as frac_integral, evaluated at a single node only.
Vec frac_integral_at(const GridFn& y, double a, int node);

/// Exact I^a of a power function.
PowerFn frac_integral_power(const PowerFn& p, double a);

/// Discrete D^alpha x together with the nodes where it is less accurate.
struct FracDerivative {
  GridFn values;
  std::vector<int> low_accuracy_nodes;
};

/// D^alpha x = (d/dt)^2 I^(2-alpha) x via second differences.
///
/// Intended for residual checks only. Endpoints use one-sided stencils and
/// are listed in low_accuracy_nodes. Requires N >= 4.
FracDerivative frac_derivative(const GridFn& x, const Order& ord);

/// Cumulative trapezoid, the I^1 operator.
GridFn cumulative_integral(const GridFn& y);

}  // namespace fracres
