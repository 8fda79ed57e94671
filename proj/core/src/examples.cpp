#include "fracres/examples.hpp"

#include "fracres/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracres {

namespace {

constexpr double kAlpha = 1.5;
constexpr double kXi = 0.25;
const double kSqrtPi = std::sqrt(M_PI);

Mat block_diag(int k, const Eigen::Vector3d& d) {
  Mat m = Mat::Zero(3 * k, 3 * k);
  for (int b = 0; b < k; ++b) m.block(3 * b, 3 * b, 3, 3) = d.asDiagonal();
  return m;
}

GoldenCheck make_check(std::string name, double expected, double computed, double tol) {
  const double r = std::abs(computed - expected);
  return GoldenCheck{std::move(name), expected, computed, r, tol, r <= tol};
}

GoldenCheck matrix_check(std::string name, const Mat& expected, const Mat& computed, double tol) {
  const double r = (computed - expected).cwiseAbs().maxCoeff();
  return GoldenCheck{std::move(name), 0.0, r, r, tol, r <= tol};
}

}  // namespace

double pseudo_reciprocal(double x) { return x == 0.0 ? 0.0 : 1.0 / x; }

Rhs section4_rhs(int k) {
  if (k < 1) throw InputError("section4: k must be >= 1");
  const int n = 3 * k;
  return [n](double, const Vec& u, const Vec& v) {
    Vec f(n);
    if (v.norm() < 1.0) {
      f(0) = 0.1;
    } else {
      f(0) = (v(0) + pseudo_reciprocal(v(0)) - 1.0) / 10.0;
    }
    for (int i = 1; i < n; ++i) f(i) = (u(i) + v(i)) / (10.0 * std::ldexp(1.0, i));
    return f;
  };
}

ProblemSpec build_section4(int k, int grid) {
  if (k < 1) throw InputError("section4: k must be >= 1");
  ProblemSpec spec;
  spec.order = Order(kAlpha);
  spec.xi = kXi;
  spec.A = LinOp(block_diag(k, Eigen::Vector3d(1.5, 1.75, 2.0)));
  spec.rhs = section4_rhs(k);
  spec.grid = grid;
  spec.name = "section4";
  spec.validate();
  return spec;
}

GrowthSpec section4_growth(double r) {
  if (!(r > 0.0)) throw InputError("section4_growth: r must be positive");
  const double a = 1.0 / (5.0 * std::sqrt(3.0));
  return constant_growth(a, a, 0.0, 0.0, (r + 1.0 / r + 1.0) / 10.0);
}

bool GoldenReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::vector<std::string> GoldenReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

GoldenReport verify_section4(int k, int grid, const Section4Options& opts) {
  GoldenReport rep;
  rep.k = k;
  rep.grid = grid;
  const ProblemSpec spec = build_section4(k, grid);
  const ResonanceData rd = build_resonance(spec);
  const Order& ord = spec.order;

  rep.checks.push_back(matrix_check("M = k blocks of diag(1/4, 1/8, 0)",
                                    block_diag(k, {0.25, 0.125, 0.0}), rd.M.matrix(), 1e-15));
  rep.checks.push_back(matrix_check("M+ = k blocks of diag(4, 8, 0)",
                                    block_diag(k, {4.0, 8.0, 0.0}), rd.Mplus.matrix(), 1e-12));
  rep.checks.push_back(make_check("dim ker M = k", k, rd.dim_ker, 0.0));
  rep.checks.push_back(make_check("ep_defect = 0", 0.0, rd.ep_defect, 1e-14));

  rep.checks.push_back(make_check("displayed Q prefactor Gamma(a)Gamma(2a)/(xi^a-1) = -8 sqrt(pi)/7",
                                  -8.0 * kSqrtPi / 7.0, displayed_q_prefactor(ord, spec.xi),
                                  1e-12));
  rep.checks.push_back(make_check("projector Q prefactor Gamma(2a)/(Gamma(a)(xi^a-1)) = -32/(7 sqrt(pi))",
                                  -32.0 / (7.0 * kSqrtPi), q_prefactor(ord, spec.xi), 1e-12));

  {
    const double xa = std::pow(spec.xi, ord.alpha());
    const Mat b = Eigen::Vector3d(1.5, 1.75, 2.0).asDiagonal();
    const Mat computed = xa * b - Mat::Identity(3, 3);
    const Mat expected = Eigen::Vector3d(-13.0 / 16.0, -25.0 / 32.0, -0.75).asDiagonal();
    rep.checks.push_back(matrix_check("B xi^a - I = diag(-13/16, -25/32, -3/4)", expected,
                                      computed, 0.0));
  }

  // d_hat = int_0^xi (xi-s)^(1/2) (s^(1/2) + sqrt(pi)/2) ds, d_tilde the same on [0, 1].
  const GridFn d_profile = GridFn::sample(grid, 1, [](double t) {
    return Vec::Constant(1, std::sqrt(t) + kSqrtPi / 2.0);
  });
  const double g = gamma(ord.alpha());
  const double d_hat = g * frac_integral_at(d_profile, ord.alpha(), spec.xi_node())(0);
  const double d_tilde = g * frac_integral_at(d_profile, ord.alpha(), grid)(0);
  const double d_hat_exact = M_PI / 128.0 + kSqrtPi / 24.0;
  const double d_tilde_exact = M_PI / 8.0 + kSqrtPi / 3.0;
  // 1e-6 at N = 4096, relaxed at the observed order 3/2 on coarser grids.
  const double d_tol = 1e-6 * std::max(1.0, std::pow(4096.0 / grid, 1.5));
  rep.checks.push_back(make_check("d_hat = pi/128 + sqrt(pi)/24 (quadrature)", d_hat_exact, d_hat,
                                  d_tol));
  rep.checks.push_back(make_check("d_tilde = pi/8 + sqrt(pi)/3 (quadrature)", d_tilde_exact,
                                  d_tilde, d_tol));

  // e = sigma * eps_3 with ||D^(1/2) x|| = sigma Gamma(3/2) >= 1: first component on its
  // second branch, where v_1 = 0 and the pseudo-reciprocal gives f_1 = -1/10.
  const double sigma = 2.0;
  Vec e = Vec::Zero(spec.dim());
  e(2) = sigma;
  const Vec h = h_functional(apply_N(spec, DomainElement{e, GridFn(grid, spec.dim())}), spec);
  rep.checks.push_back(make_check("h(N e t^(1/2))_1 = 11/(40 sqrt(pi)) as displayed",
                                  11.0 / (40.0 * kSqrtPi), h(0), 1e-6));
  rep.checks.push_back(make_check("h(N e t^(1/2))_1 = 13/(120 sqrt(pi)) recomputed",
                                  13.0 / (120.0 * kSqrtPi), h(0), 1e-6));
  rep.checks.push_back(make_check("h(N e t^(1/2))_3 = (2 d_hat - d_tilde) sigma / (20 sqrt(pi))",
                                  (2.0 * d_hat_exact - d_tilde_exact) * sigma / (20.0 * kSqrtPi),
                                  h(2), 1e-6));

  const H3Probe h3 = probe_H3(spec, rd, 1.0, opts.h3_samples, opts.seed);
  {
    GoldenCheck c{"<e, J Q N(e t^(1/2))> > 0 on sampled ker M, ||e|| > 1", 0.0, h3.min_product,
                  h3.min_product > 0.0 ? 0.0 : -h3.min_product, 0.0, h3.sign == 1};
    rep.checks.push_back(c);
  }

  const GrowthMargin margin = check_growth_margin(ord, rd, section4_growth());
  {
    const double a1 = 1.0 / (5.0 * std::sqrt(3.0));
    const double gam = kSqrtPi / 2.0;
    const double rhs = 2.0 * a1;
    rep.checks.push_back(make_check("growth margin left side Gamma(3/2)", gam, margin.gamma_alpha,
                                    1e-6));
    rep.checks.push_back(make_check("growth margin right side 2/(5 sqrt 3)", rhs, margin.rhs, 1e-6));
    rep.checks.push_back(make_check("growth margin product quotient",
                                    rhs * rhs / ((gam - rhs) * (gam - rhs)), margin.quotient, 1e-6));
    rep.checks.push_back(GoldenCheck{"growth margin holds", 1.0, margin.pass ? 1.0 : 0.0,
                                     margin.pass ? 0.0 : 1.0, 0.0, margin.pass});
  }

  {
    // The range of M per block is span{eps_1, eps_2}, not the line {(2 tau, tau, 0)}.
    const Mat block = rd.P_ranM.matrix().block(0, 0, 3, 3);
    const Eigen::Vector3d line = Eigen::Vector3d(2.0, 1.0, 0.0).normalized();
    const double range_dim = block.trace();
    std::ostringstream os;
    os << "im M per block has dimension " << std::lround(range_dim)
       << " (span of eps_1, eps_2); the displayed set {(2 tau, tau, 0)} is one-dimensional; "
       << "distance of eps_1 from that line = "
       << (Eigen::Vector3d::UnitX() - line * line.x()).norm();
    rep.notes.push_back(os.str());
  }
  rep.notes.push_back(
      "A is truncated to 3k rows; zero tail rows of A would make I - xi^(1/2) A the identity "
      "there, so they add nothing to ker M");
  rep.notes.push_back(
      "second branch of f_1 is taken on ||v|| >= 1 as written; at v_1 = 0 the reciprocal is the "
      "scalar pseudo-inverse 0");

  if (opts.run_solver) {
    const SolveReport sr = solve(spec, rd, opts.solver);
    rep.checks.push_back(GoldenCheck{"solver converged", 1.0, sr.converged ? 1.0 : 0.0,
                                     sr.converged ? 0.0 : 1.0, 0.0, sr.converged});
    rep.checks.push_back(make_check("right boundary defect", 0.0, sr.residuals.right_bc_defect,
                                    1e-5));
    rep.checks.push_back(make_check("solvability defect", 0.0, sr.residuals.solvability_defect,
                                    1e-6));
    rep.checks.push_back(make_check("pde residual (interior)", 0.0, sr.residuals.pde_residual,
                                    1e-2));
    rep.solve = sr;
  }
  return rep;
}

GoldenReport non_example_A2_check() {
  GoldenReport rep;
  const Mat b = Eigen::Vector3d(1.5, 1.75, 2.0).asDiagonal();
  const Mat b2 = b * b;
  rep.checks.push_back(matrix_check("B^2 = diag(9/4, 49/16, 4)",
                                    Eigen::Vector3d(2.25, 49.0 / 16.0, 4.0).asDiagonal(), b2, 0.0));
  const double s = std::pow(kXi, kAlpha - 1.0);  // 1/2
  const Mat lhs = b2 * s * s;
  const Mat lin = b * s;
  const double diff_lin = (lhs - lin).cwiseAbs().maxCoeff();
  const double diff_id = (lhs - Mat::Identity(3, 3)).cwiseAbs().maxCoeff();
  rep.checks.push_back(make_check("(B^2 xi^(2a-2))_11 = 9/16", 9.0 / 16.0, lhs(0, 0), 0.0));
  rep.checks.push_back(make_check("(B xi^(a-1))_11 = 3/4", 0.75, lin(0, 0), 0.0));
  rep.checks.push_back(GoldenCheck{"A^2 xi^(2a-2) != A xi^(a-1)", 0.0, diff_lin, 0.0, 0.0,
                                   diff_lin > 0.0});
  rep.checks.push_back(GoldenCheck{"A^2 xi^(2a-2) != I", 0.0, diff_id, 0.0, 0.0, diff_id > 0.0});
  return rep;
}

std::vector<std::string> builtin_names() { return {"section4", "zero"}; }

ProblemSpec make_builtin(const std::string& name, int k, int grid) {
  if (name == "section4") return build_section4(k, grid);
  if (name == "zero") {
    ProblemSpec spec = build_section4(k, grid);
    const int n = spec.dim();
    spec.rhs = [n](double, const Vec&, const Vec&) { return Vec::Zero(n); };
    spec.name = "zero";
    return spec;
  }
  throw InputError("unknown builtin problem '" + name + "'");
}

std::optional<GrowthSpec> builtin_growth(const std::string& name) {
  if (name == "section4") return section4_growth();
  if (name == "zero") return constant_growth(0.0, 0.0, 0.0, 0.0, 0.0);
  return std::nullopt;
}

}  // namespace fracres
