#include "fracres/solver.hpp"

#include "fracres/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fracres {

namespace {

constexpr double kDivergence = 1e8;
constexpr int kEdgeNodes = 2;

}  // namespace

void SolveOptions::validate() const {
  if (!(damping > 0.0 && damping <= 1.0)) throw InputError("damping must lie in (0, 1]");
  if (max_iter < 1) throw InputError("max_iter must be positive");
  if (!(tol_fixed_point > 0.0) || !(tol_residual > 0.0) || !(tol_pde > 0.0)) {
    throw InputError("solver tolerances must be positive");
  }
}

GridFn apply_N(const ProblemSpec& spec, const DomainElement& x) {
  const GridFn xs = evaluate(x, spec);
  const GridFn vs = evaluate_trace(x, spec);
  const int n = spec.dim();
  Mat out(spec.grid + 1, n);
  for (int j = 0; j <= spec.grid; ++j) {
    const Vec f = spec.rhs(xs.node(j), xs.at(j), vs.at(j));
    if (f.size() != n) throw EvaluationError("right-hand side returned wrong dimension", j);
    if (!f.allFinite()) throw EvaluationError("right-hand side returned a non-finite value", j);
    out.row(j) = f.transpose();
  }
  return GridFn(std::move(out));
}

DomainElement fixed_point_map(const ProblemSpec& spec, const ResonanceData& rd,
                              const DomainElement& x) {
  const GridFn w = apply_N(spec, x);
  const PowerFn q = Q_project(w, spec, rd);
  GridFn y = w - q.sample(spec.grid);
  Vec c = rd.ker_proj() * x.c + rd.J_action() * q.coef + rd.Mplus * h_functional(y, spec);
  return DomainElement{std::move(c), std::move(y)};
}

double iterate_distance(const DomainElement& a, const DomainElement& b) {
  return std::max((a.c - b.c).norm(), (a.y - b.y).sup_norm());
}

Residuals residuals(const ProblemSpec& spec, const ResonanceData& rd, const DomainElement& x) {
  Residuals r;
  const int big_n = spec.grid;
  const double a = spec.order.alpha();

  const GridFn xs = evaluate(x, spec);
  const GridFn w = apply_N(spec, x);

  // c t^(alpha-1) lies in the kernel of D^alpha; only the grid part is differentiated.
  const GridFn grid_part = frac_integral(x.y, a);
  const FracDerivative d = frac_derivative(grid_part, spec.order);
  const Mat diff = d.values.values() - w.values();
  r.pde_residual =
      diff.middleRows(kEdgeNodes, big_n + 1 - 2 * kEdgeNodes).rowwise().norm().maxCoeff();

  // I^(2-alpha) x(0): the power part maps to c' t^1 and the grid part starts at 0.
  const double two_m_a = spec.order.two_m_alpha();
  if (two_m_a > 0.0) {
    const PowerFn lifted = frac_integral_power(PowerFn{x.c, spec.order.alpha_m1()}, two_m_a);
    r.left_bc_defect = (lifted.eval(0.0) + frac_integral_at(x.y, two_m_a, 0)).norm();
  } else {
    r.left_bc_defect = xs.at(0).norm();
  }

  const Vec exact = rd.M * x.c - h_functional(x.y, spec);
  const Vec direct = xs.at(big_n) - spec.A * xs.at(spec.xi_node());
  r.right_bc_defect = std::max(exact.norm(), direct.norm());

  r.solvability_defect = (rd.coker_proj() * h_functional(w, spec)).norm();
  return r;
}

SolveReport solve(const ProblemSpec& spec, const ResonanceData& rd, const SolveOptions& opts) {
  opts.validate();
  SolveReport rep;
  DomainElement x = opts.initial.value_or(
      DomainElement{Vec::Zero(spec.dim()), GridFn(spec.grid, spec.dim())});
  if (x.c.size() != spec.dim() || x.y.intervals() != spec.grid || x.y.dim() != spec.dim()) {
    throw InputError("initial guess does not match the problem");
  }

  const double lam = opts.damping;
  bool small_step = false;
  try {
    for (int it = 1; it <= opts.max_iter; ++it) {
      const DomainElement phi = fixed_point_map(spec, rd, x);
      DomainElement next{(1.0 - lam) * x.c + lam * phi.c, (1.0 - lam) * x.y + lam * phi.y};
      const double step = iterate_distance(next, x);
      rep.history.push_back(step);
      rep.iterations = it;
      x = std::move(next);
      const double size = std::max(x.c.norm(), x.y.sup_norm());
      if (!std::isfinite(size) || size > kDivergence) {
        rep.diverged = true;
        rep.message = "iterate norm exceeded 1e8";
        break;
      }
      if (step <= opts.tol_fixed_point) {
        small_step = true;
        break;
      }
    }
  } catch (const EvaluationError& e) {
    rep.message = e.what();
    rep.solution = x;
    return rep;
  }

  rep.solution = x;
  if (rep.diverged) return rep;
  rep.residuals = residuals(spec, rd, x);
  const Residuals& r = rep.residuals;
  const bool residuals_ok = r.right_bc_defect <= opts.tol_residual &&
                            r.solvability_defect <= opts.tol_residual &&
                            r.left_bc_defect <= opts.tol_residual && r.pde_residual <= opts.tol_pde;
  rep.converged = small_step && residuals_ok;
  if (!small_step) {
    rep.message = "maximum iterations reached";
  } else if (!residuals_ok) {
    rep.message = "fixed point reached but residuals exceed tolerance";
  } else {
    rep.message = "converged";
  }
  return rep;
}

std::vector<SolveReport> solve_sweep(const ProblemSpec& spec, const ResonanceData& rd,
                                     const SolveOptions& opts, int count, double spread) {
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, spread);
  std::vector<SolveReport> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int s = 0; s < count; ++s) {
    Vec z(rd.dim_ker);
    for (int i = 0; i < rd.dim_ker; ++i) z(i) = gauss(rng);
    SolveOptions o = opts;
    o.initial = DomainElement{rd.kerM * z, GridFn(spec.grid, spec.dim())};
    out.push_back(solve(spec, rd, o));
  }
  return out;
}

namespace {

double spow(double z, double g) { return g == 0.0 ? 1.0 : std::pow(z, g); }

void require_coefficient(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("apriori_bound: ") + name + " must be finite and >= 0");
  }
}

}  // namespace

Bound apriori_bound(const BoundCoefficients& k) {
  require_coefficient(k.lambda1, "lambda1");
  require_coefficient(k.lambda2, "lambda2");
  require_coefficient(k.lambda3, "lambda3");
  require_coefficient(k.mu1, "mu1");
  require_coefficient(k.mu2, "mu2");
  require_coefficient(k.mu3, "mu3");
  if (!(k.gamma1 >= 0.0 && k.gamma1 < 1.0) || !(k.gamma2 >= 0.0 && k.gamma2 < 1.0)) {
    throw DomainError("apriori_bound: exponents must lie in [0, 1)");
  }
  const double coupling = k.lambda2 * k.mu1;
  if (coupling >= 1.0) {
    std::ostringstream os;
    os << "no bound certified: lambda2 * mu1 = " << coupling << " >= 1";
    throw NoBoundError(os.str());
  }

  // Tangent bound z^g <= (1-g) z0^g + g z0^(g-1) z turns the system into a
  // linear one; pick z0 large enough that its matrix stays a contraction.
  double z0 = 1.0;
  double s1 = 0.0, s2 = 0.0;
  for (int tries = 0; tries < 2000; ++tries) {
    s1 = k.gamma1 * spow(z0, k.gamma1 - 1.0);
    s2 = k.gamma2 * spow(z0, k.gamma2 - 1.0);
    const double d1 = 1.0 - k.lambda1 * s1;
    const double d2 = 1.0 - k.mu2 * s2;
    if (d1 > 0.0 && d2 > 0.0 && d1 * d2 - coupling >= 0.5 * (1.0 - coupling)) break;
    z0 *= 2.0;
  }
  const double d1 = 1.0 - k.lambda1 * s1;
  const double d2 = 1.0 - k.mu2 * s2;
  const double b1 = k.lambda1 * (1.0 - k.gamma1) * spow(z0, k.gamma1) + k.lambda3;
  const double b2 = k.mu2 * (1.0 - k.gamma2) * spow(z0, k.gamma2) + k.mu3;
  const double det = d1 * d2 - coupling;
  double z1 = (d2 * b1 + k.lambda2 * b2) / det;
  double z2 = (k.mu1 * b1 + d1 * b2) / det;

  // F is monotone and F(S) <= S, so F^m(S) decreases to the largest fixed
  // point while remaining an upper bound for every admissible (z1, z2).
  Bound out;
  for (int it = 0; it < 1000000; ++it) {
    const double n1 = std::min(z1, k.lambda1 * spow(z1, k.gamma1) + k.lambda2 * z2 + k.lambda3);
    const double n2 = std::min(z2, k.mu1 * z1 + k.mu2 * spow(z2, k.gamma2) + k.mu3);
    const double change = std::max(std::abs(n1 - z1), std::abs(n2 - z2));
    z1 = n1;
    z2 = n2;
    out.iterations = it + 1;
    if (change <= 1e-10 * std::max(1.0, std::max(z1, z2))) break;
  }
  out.z1 = z1;
  out.z2 = z2;
  return out;
}

}  // namespace fracres
