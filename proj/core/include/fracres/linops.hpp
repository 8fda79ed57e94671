#pragma once

// Dense finite-dimensional operator algebra: Moore-Penrose inverse,
// Penrose-identity diagnostics, spectral norms and kernel bases.

#include "fracres/fracops.hpp"

#include <iosfwd>
#include <string>

namespace fracres {

/// Dense real matrix with finite entries.
class LinOp {
 public:
  LinOp() = default;
  explicit LinOp(Mat entries);

  static LinOp identity(int n) { return LinOp(Mat::Identity(n, n)); }
  static LinOp zero(int rows, int cols) { return LinOp(Mat::Zero(rows, cols)); }

  int rows() const noexcept { return static_cast<int>(m_.rows()); }
  int cols() const noexcept { return static_cast<int>(m_.cols()); }
  bool square() const noexcept { return m_.rows() == m_.cols(); }
  const Mat& matrix() const noexcept { return m_; }

  Vec operator*(const Vec& v) const { return m_ * v; }

 private:
  Mat m_;
};

struct PinvResult {
  LinOp pinv;
  int rank = 0;
  double tol_used = 0.0;
  LinOp range_proj;    // M M^+
  LinOp corange_proj;  // M^+ M
  Vec singular_values;
  /// Some singular value lies within a factor 10 of the rank tolerance.
  bool rank_ambiguous = false;
};

/// Default rank tolerance: eps * max(rows, cols) * sigma_max.
double default_rank_tol(const Vec& singular_values, int rows, int cols);

/// Moore-Penrose pseudoinverse via SVD. tol == 0 selects default_rank_tol.
PinvResult pinv(const LinOp& m, double tol = 0.0);

struct PenroseResiduals {
  double xmx_minus_x = 0.0;   // ||X M X - X||
  double mxm_minus_m = 0.0;   // ||M X M - M||
  double mx_asym = 0.0;       // ||(M X)^T - M X||
  double xm_asym = 0.0;       // ||(X M)^T - X M||
  bool pass = false;

  double max() const;
};

/// The four Penrose identities, measured in the spectral norm.
PenroseResiduals check_penrose(const LinOp& m, const LinOp& x, double tol);

/// Spectral norm (largest singular value).
double operator_norm(const LinOp& m);
double operator_norm(const Mat& m);

/// Orthonormal basis of the range of a symmetric idempotent matrix.
///
/// Columns are produced by pivoted Gram-Schmidt on the projector's own
/// columns, so equal projectors always give identical bases.
Mat projector_basis(const Mat& projector, int dim);

/// Orthonormal columns spanning ker M; count = cols - rank.
Mat kernel_basis(const LinOp& m, double tol = 0.0);

/// Reads a matrix in the "rows,cols" header + row-major CSV format.
LinOp read_matrix_csv(std::istream& in);
LinOp read_matrix_csv_file(const std::string& path);
void write_matrix_csv(std::ostream& out, const LinOp& m);

}  // namespace fracres
