#include "fracres/linops.hpp"

#include "fracres/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>
#include <cctype>

namespace fracres {

LinOp::LinOp(Mat entries) : m_(std::move(entries)) {
  if (!m_.allFinite()) throw InputError("LinOp: non-finite entry");
}

double default_rank_tol(const Vec& singular_values, int rows, int cols) {
  const double smax = singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return std::numeric_limits<double>::epsilon() * std::max(rows, cols) * smax;
}

PinvResult pinv(const LinOp& m, double tol) {
  if (tol < 0.0 || !std::isfinite(tol)) throw InputError("pinv: tolerance must be >= 0");
  const Mat& a = m.matrix();
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double cut = tol > 0.0 ? tol : default_rank_tol(s, m.rows(), m.cols());

  PinvResult out;
  out.tol_used = cut;
  out.singular_values = s;
  Vec inv = Vec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) {
      inv(i) = 1.0 / s(i);
      ++out.rank;
    }
    if (s(i) >= cut / 10.0 && s(i) <= cut * 10.0 && cut > 0.0) out.rank_ambiguous = true;
  }
  const Mat& u = svd.matrixU();
  const Mat& v = svd.matrixV();
  const auto k = s.size();
  Mat x = v.leftCols(k) * inv.asDiagonal() * u.leftCols(k).transpose();

  // Projectors assembled from singular vectors are symmetric by construction.
  const auto r = out.rank;
  Mat range = u.leftCols(r) * u.leftCols(r).transpose();
  Mat corange = v.leftCols(r) * v.leftCols(r).transpose();
  out.pinv = LinOp(std::move(x));
  out.range_proj = LinOp(std::move(range));
  out.corange_proj = LinOp(std::move(corange));
  return out;
}

double PenroseResiduals::max() const {
  return std::max({xmx_minus_x, mxm_minus_m, mx_asym, xm_asym});
}

PenroseResiduals check_penrose(const LinOp& m, const LinOp& x, double tol) {
  if (x.rows() != m.cols() || x.cols() != m.rows()) {
    throw InputError("check_penrose: X must have the shape of M transposed");
  }
  const Mat& a = m.matrix();
  const Mat& b = x.matrix();
  const Mat ab = a * b;
  const Mat ba = b * a;
  PenroseResiduals r;
  r.xmx_minus_x = operator_norm(Mat(b * a * b - b));
  r.mxm_minus_m = operator_norm(Mat(a * b * a - a));
  r.mx_asym = operator_norm(Mat(ab.transpose() - ab));
  r.xm_asym = operator_norm(Mat(ba.transpose() - ba));
  r.pass = r.max() <= tol;
  return r;
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double operator_norm(const LinOp& m) { return operator_norm(m.matrix()); }

Mat projector_basis(const Mat& projector, int dim) {
  const Eigen::Index n = projector.rows();
  Mat work = projector;
  Mat basis(n, dim);
  std::vector<bool> used(static_cast<std::size_t>(projector.cols()), false);
  for (int b = 0; b < dim; ++b) {
    double best = -1.0;
    for (Eigen::Index c = 0; c < work.cols(); ++c) {
      if (!used[c]) best = std::max(best, work.col(c).norm());
    }
    if (best <= 0.0) throw InputError("projector_basis: projector rank below requested dimension");
    // Lowest index among near-maximal columns keeps ties deterministic.
    Eigen::Index pick = -1;
    for (Eigen::Index c = 0; c < work.cols(); ++c) {
      if (!used[c] && work.col(c).norm() >= (1.0 - 1e-8) * best) {
        pick = c;
        break;
      }
    }
    used[pick] = true;
    Vec q = work.col(pick);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < b; ++j) q -= basis.col(j).dot(q) * basis.col(j);
    }
    q.normalize();
    basis.col(b) = q;
    for (Eigen::Index c = 0; c < work.cols(); ++c) {
      if (!used[c]) work.col(c) -= q.dot(work.col(c)) * q;
    }
  }
  return basis;
}

Mat kernel_basis(const LinOp& m, double tol) {
  const PinvResult p = pinv(m, tol);
  const int dim = m.cols() - p.rank;
  if (dim == 0) return Mat(m.cols(), 0);
  const Mat proj = Mat::Identity(m.cols(), m.cols()) - p.corange_proj.matrix();
  return projector_basis(proj, dim);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &pos);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + cell + "'", line);
  }
  while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
  if (pos != cell.size()) throw ParseError("trailing characters in '" + cell + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite entry", line);
  return v;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

LinOp read_matrix_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!blank(line) && line[0] != '#') return true;
    }
    return false;
  };
  if (!next()) throw ParseError("empty matrix file", lineno);
  const auto header = split_csv(line);
  if (header.size() != 2) throw ParseError("header must be 'rows,cols'", lineno);
  const double r = parse_number(header[0], lineno);
  const double c = parse_number(header[1], lineno);
  if (r < 1 || c < 1 || r != std::floor(r) || c != std::floor(c)) {
    throw ParseError("dimensions must be positive integers", lineno);
  }
  const int rows = static_cast<int>(r);
  const int cols = static_cast<int>(c);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!next()) throw ParseError("expected " + std::to_string(rows) + " rows", lineno);
    const auto cells = split_csv(line);
    if (static_cast<int>(cells.size()) != cols) {
      throw ParseError("expected " + std::to_string(cols) + " columns", lineno);
    }
    for (int j = 0; j < cols; ++j) m(i, j) = parse_number(cells[j], lineno);
  }
  if (next()) throw ParseError("unexpected extra row", lineno);
  return LinOp(std::move(m));
}

LinOp read_matrix_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file '" + path + "'");
  try {
    return read_matrix_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

void write_matrix_csv(std::ostream& out, const LinOp& m) {
  out << m.rows() << ',' << m.cols() << '\n';
  out << std::setprecision(17);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m.matrix()(i, j);
    }
    out << '\n';
  }
}

}  // namespace fracres
