#include "fracres/fracops.hpp"

#include "fracres/error.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace fracres {

namespace {

void require_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) {
    throw InputError(std::string(what) + ": non-finite sample");
  }
}

// (1+x)^p + (1-x)^p - 2 for |x| <= 1/16 via the even binomial series.
double even_binomial_tail(double p, double x) {
  const double x2 = x * x;
  double coeff = 1.0;  // C(p, j)
  double sum = 0.0;
  double xp = 1.0;
  for (int j = 0; j < 60; j += 2) {
    coeff *= (p - j) / (j + 1);
    coeff *= (p - j - 1) / (j + 2);
    xp *= x2;
    const double term = coeff * xp;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return 2.0 * sum;
}

// (1-x)^p - 1 + p x for |x| <= 1/16.
double shifted_binomial_tail(double p, double x) {
  double coeff = p;  // C(p, 1)
  double sum = 0.0;
  double xp = -x;
  for (int j = 1; j < 60; ++j) {
    coeff *= (p - j) / (j + 1);
    xp *= -x;
    const double term = coeff * xp;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum) && j > 2) break;
  }
  return sum;
}

constexpr int kSeriesThreshold = 16;

// Weights of the product trapezoid rule for I^a at node j, without the
// common factor h^a / Gamma(a+2). interior(m) is the weight of y_{j-m} for
// 1 <= m <= j-1; the weight of y_j is 1.
class ProductTrapezoidWeights {
 public:
  ProductTrapezoidWeights(double a, int max_node) : a_(a), interior_(max_node + 1, 0.0) {
    const double p = a + 1.0;
    for (int m = 1; m <= max_node; ++m) {
      if (m < kSeriesThreshold) {
        interior_[m] = std::pow(m + 1.0, p) - 2.0 * std::pow(m, p) + std::pow(m - 1.0, p);
      } else {
        interior_[m] = std::pow(m, p) * even_binomial_tail(p, 1.0 / m);
      }
    }
  }

  double interior(int m) const { return interior_[m]; }

  double first(int j) const {
    const double p = a_ + 1.0;
    if (j < kSeriesThreshold) {
      return std::pow(j - 1.0, p) - (j - 1.0 - a_) * std::pow(j, a_);
    }
    return std::pow(j, p) * shifted_binomial_tail(p, 1.0 / j);
  }

 private:
  double a_;
  std::vector<double> interior_;
};

void require_order(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    std::ostringstream os;
    os << "fractional integral order must be positive, got " << a;
    throw DomainError(os.str());
  }
}

Eigen::RowVectorXd integrate_node(const Mat& v, const ProductTrapezoidWeights& w, double scale,
                                  int j) {
  if (j == 0) return Eigen::RowVectorXd::Zero(v.cols());
  Eigen::RowVectorXd acc = w.first(j) * v.row(0) + v.row(j);
  for (int k = 1; k < j; ++k) acc += w.interior(j - k) * v.row(k);
  return scale * acc;
}

}  // namespace

Order::Order(double alpha) : alpha_(alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "order alpha must lie in (1, 2], got " << alpha;
    throw DomainError(os.str());
  }
}

GridFn::GridFn(int intervals, int dim) {
  if (intervals < 2) throw GridError("grid needs at least 2 intervals");
  if (dim < 1) throw InputError("grid function dimension must be positive");
  values_ = Mat::Zero(intervals + 1, dim);
}

GridFn::GridFn(Mat values) : values_(std::move(values)) {
  if (values_.rows() < 3) throw GridError("grid needs at least 2 intervals");
  if (values_.cols() < 1) throw InputError("grid function dimension must be positive");
  require_finite(values_, "GridFn");
}

GridFn GridFn::sample(int intervals, int dim, const std::function<Vec(double)>& f) {
  GridFn g(intervals, dim);
  for (int j = 0; j <= intervals; ++j) {
    const Vec v = f(g.node(j));
    if (v.size() != dim) throw InputError("GridFn::sample: sample has wrong dimension");
    g.values_.row(j) = v.transpose();
  }
  require_finite(g.values_, "GridFn::sample");
  return g;
}

double GridFn::sup_norm() const { return values_.rowwise().norm().maxCoeff(); }

double GridFn::l1_norm() const {
  const Vec norms = values_.rowwise().norm();
  const int n = intervals();
  return step() * (norms.sum() - 0.5 * (norms(0) + norms(n)));
}

GridFn& GridFn::operator+=(const GridFn& other) {
  if (other.values_.rows() != values_.rows() || other.values_.cols() != values_.cols()) {
    throw InputError("GridFn shapes differ");
  }
  values_ += other.values_;
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& other) {
  if (other.values_.rows() != values_.rows() || other.values_.cols() != values_.cols()) {
    throw InputError("GridFn shapes differ");
  }
  values_ -= other.values_;
  return *this;
}

GridFn& GridFn::operator*=(double s) {
  values_ *= s;
  return *this;
}

Vec PowerFn::eval(double t) const {
  if (t == 0.0) {
    if (exponent > 0.0) return Vec::Zero(coef.size());
    if (exponent == 0.0) return coef;
  }
  return coef * std::pow(t, exponent);
}

GridFn PowerFn::sample(int intervals) const {
  return GridFn::sample(intervals, static_cast<int>(coef.size()),
                        [this](double t) { return eval(t); });
}

double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "gamma: argument must be positive and finite, got " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

double power_rule(double beta, double alpha) {
  if (!(beta > -1.0)) {
    std::ostringstream os;
    os << "power_rule: exponent " << beta << " <= -1 gives a divergent integral";
    throw DomainError(os.str());
  }
  require_order(alpha);
  if (beta + alpha + 1.0 > 150.0) {
    return std::exp(std::lgamma(beta + 1.0) - std::lgamma(beta + alpha + 1.0));
  }
  return gamma(beta + 1.0) / gamma(beta + alpha + 1.0);
}

GridFn frac_integral(const GridFn& y, double a) {
  require_order(a);
  const int n = y.intervals();
  const ProductTrapezoidWeights w(a, n);
  const double scale = std::pow(y.step(), a) / gamma(a + 2.0);
  Mat out(n + 1, y.dim());
  for (int j = 0; j <= n; ++j) out.row(j) = integrate_node(y.values(), w, scale, j);
  return GridFn(std::move(out));
}

Vec frac_integral_at(const GridFn& y, double a, int node) {
  require_order(a);
  if (node < 0 || node > y.intervals()) throw InputError("frac_integral_at: node out of range");
  const ProductTrapezoidWeights w(a, node);
  const double scale = std::pow(y.step(), a) / gamma(a + 2.0);
  return integrate_node(y.values(), w, scale, node).transpose();
}

PowerFn frac_integral_power(const PowerFn& p, double a) {
  return PowerFn{p.coef * power_rule(p.exponent, a), p.exponent + a};
}

FracDerivative frac_derivative(const GridFn& x, const Order& ord) {
  const int n = x.intervals();
  if (n < 4) throw GridError("frac_derivative needs at least 4 intervals");
  const GridFn z = ord.two_m_alpha() > 0.0 ? frac_integral(x, ord.two_m_alpha()) : x;
  const Mat& v = z.values();
  const double inv_h2 = 1.0 / (x.step() * x.step());
  Mat d(n + 1, x.dim());
  for (int j = 1; j < n; ++j) d.row(j) = (v.row(j + 1) - 2.0 * v.row(j) + v.row(j - 1)) * inv_h2;
  d.row(0) = (2.0 * v.row(0) - 5.0 * v.row(1) + 4.0 * v.row(2) - v.row(3)) * inv_h2;
  d.row(n) = (2.0 * v.row(n) - 5.0 * v.row(n - 1) + 4.0 * v.row(n - 2) - v.row(n - 3)) * inv_h2;
  return FracDerivative{GridFn(std::move(d)), {0, n}};
}

GridFn cumulative_integral(const GridFn& y) {
  const int n = y.intervals();
  const Mat& v = y.values();
  Mat out(n + 1, y.dim());
  out.row(0).setZero();
  const double half_h = 0.5 * y.step();
  for (int j = 1; j <= n; ++j) out.row(j) = out.row(j - 1) + half_h * (v.row(j - 1) + v.row(j));
  return GridFn(std::move(out));
}

}  // namespace fracres
