#include "fracres/resonance.hpp"

#include "fracres/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fracres {

namespace {

constexpr double kGridMatch = 1e-9;

void require_on_grid(const GridFn& y, const ProblemSpec& spec) {
  if (y.intervals() != spec.grid || y.dim() != spec.dim()) {
    throw InputError("grid function does not match the problem grid or dimension");
  }
}

}  // namespace

int ProblemSpec::xi_node() const {
  const double pos = xi * grid;
  const double rounded = std::round(pos);
  if (std::abs(pos - rounded) > kGridMatch * std::max(1.0, pos)) {
    std::ostringstream os;
    os << "xi = " << xi << " is not a node of the grid with N = " << grid;
    const int n = smallest_grid_for(xi, 8);
    if (n > 0) os << "; smallest valid N is " << n;
    throw InputError(os.str());
  }
  return static_cast<int>(rounded);
}

void ProblemSpec::validate() const {
  if (!(xi > 0.0 && xi < 1.0)) throw InputError("xi must lie in (0, 1)");
  if (!A.square() || A.rows() < 1) throw InputError("boundary operator A must be square");
  if (grid < 4) throw GridError("grid must have at least 4 intervals");
  if (!rhs) throw InputError("right-hand side is not set");
  (void)xi_node();
}

int smallest_grid_for(double xi, int min_n, int max_n) {
  for (int n = std::max(min_n, 1); n <= max_n; ++n) {
    const double pos = xi * n;
    if (std::abs(pos - std::round(pos)) <= kGridMatch * std::max(1.0, pos)) return n;
  }
  return -1;
}

Mat ResonanceData::coker_proj() const {
  return Mat::Identity(n(), n()) - P_ranM.matrix();
}

Mat ResonanceData::ker_proj() const {
  return Mat::Identity(n(), n()) - P_coranM.matrix();
}

Mat ResonanceData::J_action() const { return kerM * J * kerMstar.transpose(); }

ResonanceData build_resonance(const ProblemSpec& spec, double tol) {
  spec.validate();
  const int n = spec.dim();
  const double scale = std::pow(spec.xi, spec.order.alpha_m1());
  ResonanceData rd;
  rd.M = LinOp(Mat::Identity(n, n) - scale * spec.A.matrix());
  if (tol == 0.0) {
    // Rounding in the subtraction is relative to its operands, not to M itself,
    // so a nearly cancelled M (e.g. A = xi^(1-alpha) I) still has a clear kernel.
    const double operands = std::max(1.0, scale * operator_norm(spec.A));
    tol = std::max(default_rank_tol(Vec::Constant(1, operands), n, n),
                   default_rank_tol(Vec::Constant(1, operator_norm(rd.M)), n, n));
  }
  const PinvResult p = pinv(rd.M, tol);
  rd.Mplus = p.pinv;
  rd.P_ranM = p.range_proj;
  rd.P_coranM = p.corange_proj;
  rd.rank = p.rank;
  rd.tol_used = p.tol_used;
  rd.dim_ker = n - p.rank;
  if (p.rank_ambiguous) {
    std::ostringstream os;
    os << "ill-conditioned rank: a singular value of M lies within a factor 10 of the rank "
          "tolerance "
       << p.tol_used;
    rd.warnings.push_back(os.str());
  }
  if (rd.dim_ker == 0) {
    std::ostringstream os;
    os << "non-resonant problem: ker(I - xi^(alpha-1) A) is trivial (smallest singular value "
       << p.singular_values.minCoeff() << ")";
    throw NonResonantError(os.str());
  }
  rd.kerM = projector_basis(rd.ker_proj(), rd.dim_ker);
  rd.kerMstar = projector_basis(rd.coker_proj(), rd.dim_ker);
  rd.J = Mat::Identity(rd.dim_ker, rd.dim_ker);
  rd.ep_defect = operator_norm(Mat(rd.P_ranM.matrix() * rd.kerM));
  if (rd.ep_defect > 1e-8) {
    std::ostringstream os;
    os << "ker M and ker M* differ (ep_defect = " << rd.ep_defect
       << "); im Q and ker L are identified only through J";
    rd.warnings.push_back(os.str());
  }
  return rd;
}

GridFn evaluate(const DomainElement& x, const ProblemSpec& spec) {
  require_on_grid(x.y, spec);
  GridFn out = frac_integral(x.y, spec.order.alpha());
  out += PowerFn{x.c, spec.order.alpha_m1()}.sample(spec.grid);
  return out;
}

GridFn evaluate_trace(const DomainElement& x, const ProblemSpec& spec) {
  require_on_grid(x.y, spec);
  GridFn out = cumulative_integral(x.y);
  const Vec shift = gamma(spec.order.alpha()) * x.c;
  Mat v = out.values();
  v.rowwise() += shift.transpose();
  return GridFn(std::move(v));
}

Vec h_functional(const GridFn& y, const ProblemSpec& spec) {
  require_on_grid(y, spec);
  const double a = spec.order.alpha();
  const Vec at_xi = frac_integral_at(y, a, spec.xi_node());
  const Vec at_one = frac_integral_at(y, a, spec.grid);
  return spec.A * at_xi - at_one;
}

Vec h_functional(const PowerFn& y, const ProblemSpec& spec) {
  if (y.coef.size() != spec.dim()) throw InputError("power function has wrong dimension");
  const double a = spec.order.alpha();
  const double pr = power_rule(y.exponent, a);
  const double xi_pow = std::pow(spec.xi, y.exponent + a);
  return pr * (xi_pow * (spec.A * y.coef) - y.coef);
}

double q_prefactor(const Order& ord, double xi) {
  const double a = ord.alpha();
  return gamma(2.0 * a) / (gamma(a) * (std::pow(xi, a) - 1.0));
}

double displayed_q_prefactor(const Order& ord, double xi) {
  const double a = ord.alpha();
  return gamma(a) * gamma(2.0 * a) / (std::pow(xi, a) - 1.0);
}

namespace {

PowerFn q_from_h(const Vec& h, const ProblemSpec& spec, const ResonanceData& rd) {
  return PowerFn{q_prefactor(spec.order, spec.xi) * (rd.coker_proj() * h),
                 spec.order.alpha_m1()};
}

}  // namespace

PowerFn Q_project(const GridFn& y, const ProblemSpec& spec, const ResonanceData& rd) {
  return q_from_h(h_functional(y, spec), spec, rd);
}

PowerFn Q_project(const PowerFn& y, const ProblemSpec& spec, const ResonanceData& rd) {
  return q_from_h(h_functional(y, spec), spec, rd);
}

DomainElement P_project(const DomainElement& x, const ResonanceData& rd) {
  GridFn zero(x.y.intervals(), x.y.dim());
  return DomainElement{rd.ker_proj() * x.c, std::move(zero)};
}

DomainElement K_P(const GridFn& y, const ProblemSpec& spec, const ResonanceData& rd) {
  return DomainElement{rd.Mplus * h_functional(y, spec), y};
}

GridFn project_onto_image(const GridFn& y, const ProblemSpec& spec, const ResonanceData& rd) {
  // For constant b: h(b) = (xi^a A - I) b / Gamma(a+1), and on im(I - M M^+)
  // A acts as xi^(1-a), so (I - M M^+) h(b) = (xi - 1)/Gamma(a+1) (I - M M^+) b.
  const double a = spec.order.alpha();
  const Vec defect = rd.coker_proj() * h_functional(y, spec);
  const Vec b = defect * (gamma(a + 1.0) / (spec.xi - 1.0));
  Mat v = y.values();
  v.rowwise() -= b.transpose();
  return GridFn(std::move(v));
}

double domain_norm(const DomainElement& x, const ProblemSpec& spec) {
  return std::max(evaluate(x, spec).sup_norm(), evaluate_trace(x, spec).sup_norm());
}

bool StructureReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

GridFn random_smooth(int intervals, int dim, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr int kModes = 4;
  Mat cos_coef(kModes, dim);
  Mat sin_coef(kModes, dim);
  for (int m = 0; m < kModes; ++m) {
    for (int i = 0; i < dim; ++i) {
      cos_coef(m, i) = scale * gauss(rng) / (1.0 + m);
      sin_coef(m, i) = scale * gauss(rng) / (1.0 + m);
    }
  }
  return GridFn::sample(intervals, dim, [&](double t) {
    Vec v = Vec::Zero(dim);
    for (int m = 0; m < kModes; ++m) {
      const double w = M_PI * m * t;
      v += std::cos(w) * cos_coef.row(m).transpose() + std::sin(w) * sin_coef.row(m).transpose();
    }
    return v;
  });
}

StructureReport verify_structure(const ProblemSpec& spec, const ResonanceData& rd, int samples,
                                 std::uint64_t seed) {
  StructureReport report;
  const int n = spec.dim();
  const double a = spec.order.alpha();
  const double xi = spec.xi;
  const Mat coker = rd.coker_proj();

  {
    const Mat lhs = coker * (std::pow(xi, 2.0 * a - 1.0) * spec.A.matrix() -
                             Mat::Identity(n, n));
    const Mat rhs = (std::pow(xi, a) - 1.0) * coker;
    const double r = operator_norm(Mat(lhs - rhs));
    report.checks.push_back({"identity (I-MM+)(xi^(2a-1)A-I) = (xi^a-1)(I-MM+)", r, 1e-13,
                             r <= 1e-13});
  }

  double q_idem = 0.0;
  double q_image = 0.0;
  double lkp = 0.0;
  for (int s = 0; s < samples; ++s) {
    const GridFn y = random_smooth(spec.grid, n, seed + static_cast<std::uint64_t>(s));
    const PowerFn q1 = Q_project(y, spec, rd);
    const PowerFn q2 = Q_project(q1, spec, rd);
    q_idem = std::max(q_idem, (q2.coef - q1.coef).norm() / std::max(1.0, q1.coef.norm()));

    const GridFn img = project_onto_image(y, spec, rd);
    q_image = std::max(q_image, Q_project(img, spec, rd).coef.norm() / std::max(1.0, y.sup_norm()));

    const DomainElement x = K_P(img, spec, rd);
    // D^alpha kills the c t^(alpha-1) part exactly; differentiate the grid part only.
    const GridFn grid_part = frac_integral(img, a);
    const FracDerivative d = frac_derivative(grid_part, spec.order);
    const Mat diff = d.values.values() - img.values();
    const int N = spec.grid;
    const double r = diff.middleRows(2, N - 3).rowwise().norm().maxCoeff();
    lkp = std::max(lkp, r / std::max(1.0, img.sup_norm()));
  }
  report.checks.push_back({"Q idempotent", q_idem, 1e-8, q_idem <= 1e-8});
  report.checks.push_back({"Q annihilates im L", q_image, 1e-8, q_image <= 1e-8});

  double q_ker = 0.0;
  for (int k = 0; k < rd.dim_ker; ++k) {
    const Vec c = rd.kerM.col(k);
    const PowerFn q = Q_project(PowerFn{c, spec.order.alpha_m1()}, spec, rd);
    q_ker = std::max(q_ker, (q.coef - c).norm());
  }
  // For non-EP operators the residual equals ep_defect and the check fails.
  report.checks.push_back({"Q fixes ker L", q_ker, 1e-8, q_ker <= 1e-8});

  // The error concentrates on the first few nodes, where the nested product
  // quadrature meets the t^alpha onset, and stays near 2e-3 there for every N.
  const double lkp_tol = 1e-2;
  report.checks.push_back({"L K_P = id on im L (grid)", lkp, lkp_tol, lkp <= lkp_tol});
  return report;
}

}  // namespace fracres
