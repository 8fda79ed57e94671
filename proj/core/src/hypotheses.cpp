#include "fracres/hypotheses.hpp"

#include "fracres/error.hpp"
#include "fracres/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fracres {

namespace {

Vec random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  } while (v.norm() == 0.0);
  return v.normalized();
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

double midpoint_rule(const ScalarFn& f, int cells) {
  const double h = 1.0 / cells;
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) sum += std::abs(f((i + 0.5) * h));
  return sum * h;
}

}  // namespace

void GrowthSpec::validate() const {
  if (!a1 || !b1 || !a2 || !b2 || !c) throw InputError("growth spec: all five functions required");
  if (!(gamma1 >= 0.0 && gamma1 < 1.0) || !(gamma2 >= 0.0 && gamma2 < 1.0)) {
    throw InputError("growth spec: exponents must lie in [0, 1)");
  }
  for (const auto& n : {a1_l1, b1_l1, a2_l1, b2_l1, c_l1}) {
    if (n && (!(*n >= 0.0) || !std::isfinite(*n))) {
      throw InputError("growth spec: L1 norms must be finite and >= 0");
    }
  }
}

GrowthSpec constant_growth(double a1, double b1, double a2, double b2, double c, double gamma1,
                           double gamma2) {
  GrowthSpec g;
  g.a1 = [a1](double) { return a1; };
  g.b1 = [b1](double) { return b1; };
  g.a2 = [a2](double) { return a2; };
  g.b2 = [b2](double) { return b2; };
  g.c = [c](double) { return c; };
  g.a1_l1 = std::abs(a1);
  g.b1_l1 = std::abs(b1);
  g.a2_l1 = std::abs(a2);
  g.b2_l1 = std::abs(b2);
  g.c_l1 = std::abs(c);
  g.gamma1 = gamma1;
  g.gamma2 = gamma2;
  return g;
}

L1Norm l1_norm(const ScalarFn& f, const std::optional<double>& supplied) {
  if (supplied) return L1Norm{*supplied, 0.0, true};
  // Midpoint rule avoids endpoint evaluation of weakly singular integrands.
  const double coarse = midpoint_rule(f, 2048);
  const double fine = midpoint_rule(f, 4096);
  return L1Norm{(4.0 * fine - coarse) / 3.0, std::abs(fine - coarse) / 3.0, false};
}

H1Verdict check_H1(const ProblemSpec& spec, const GrowthSpec& growth, int sample_count,
                   std::uint64_t seed, const H1Sampling& sampling) {
  growth.validate();
  if (sample_count < 1) throw InputError("check_H1: sample_count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = spec.dim();
  H1Verdict v;
  v.samples = sample_count;
  v.worst_slack = std::numeric_limits<double>::infinity();
  for (int s = 0; s < sample_count; ++s) {
    const double t = unit(rng);
    const double un = log_uniform(rng, sampling.min_norm, sampling.max_norm);
    const double vn = log_uniform(rng, sampling.min_norm, sampling.max_norm);
    const Vec u = un * random_direction(rng, n);
    const Vec w = vn * random_direction(rng, n);
    const double fn = spec.rhs(t, u, w).norm();
    const double bound = growth.a1(t) * un + growth.b1(t) * vn +
                         growth.a2(t) * std::pow(un, growth.gamma1) +
                         growth.b2(t) * std::pow(vn, growth.gamma2) + growth.c(t);
    const double slack = std::isfinite(fn) ? bound - fn : -std::numeric_limits<double>::infinity();
    if (slack < -1e-12 * std::max(1.0, bound)) ++v.violations;
    if (slack < v.worst_slack) {
      v.worst_slack = slack;
      v.worst_t = t;
      v.worst_u_norm = un;
      v.worst_v_norm = vn;
    }
  }
  v.ok = v.violations == 0;
  return v;
}

GrowthMargin check_growth_margin(const Order& ord, const ResonanceData& rd,
                               const GrowthSpec& growth) {
  GrowthMargin c;
  c.gamma_alpha = gamma(ord.alpha());
  c.ker_proj_norm = operator_norm(rd.ker_proj());
  c.a1_l1 = l1_norm(growth.a1, growth.a1_l1);
  c.b1_l1 = l1_norm(growth.b1, growth.b1_l1);
  const double k = c.ker_proj_norm + 1.0;
  c.rhs_a1 = k * c.a1_l1.value;
  c.rhs_b1 = k * c.b1_l1.value;
  c.rhs = std::max(c.rhs_a1, c.rhs_b1);
  c.margin = c.gamma_alpha - c.rhs;
  const double da = c.gamma_alpha - c.rhs_a1;
  const double db = c.gamma_alpha - c.rhs_b1;
  c.quotient = (da > 0.0 && db > 0.0) ? (c.rhs_a1 * c.rhs_b1) / (da * db)
                                      : std::numeric_limits<double>::infinity();
  c.pass = c.gamma_alpha > c.rhs_a1 && c.gamma_alpha > c.rhs_b1 && c.quotient < 1.0;
  return c;
}

H2Probe probe_H2(const ProblemSpec& spec, const ResonanceData& rd, double A1, int sample_count,
                 std::uint64_t seed) {
  if (!(A1 > 0.0)) throw InputError("probe_H2: A1 must be positive");
  std::mt19937_64 rng(seed);
  const int n = spec.dim();
  const double g = gamma(spec.order.alpha());
  const Mat coker = rd.coker_proj();
  H2Probe p;
  p.min_defect = std::numeric_limits<double>::infinity();
  p.max_defect = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    const GridFn y = random_smooth(spec.grid, n, rng(), 0.1 * A1);
    const double drift = cumulative_integral(y).sup_norm();
    const double trace_norm = A1 + drift + log_uniform(rng, 0.1 * A1, 10.0 * A1);
    const Vec c = (trace_norm / g) * random_direction(rng, n);
    const DomainElement x{c, y};
    double d = 0.0;
    try {
      d = (coker * h_functional(apply_N(spec, x), spec)).norm();
    } catch (const EvaluationError&) {
      ++p.evaluation_failures;
      continue;
    }
    p.min_defect = std::min(p.min_defect, d);
    p.max_defect = std::max(p.max_defect, d);
    ++p.samples;
  }
  if (p.samples == 0) p.min_defect = 0.0;
  p.evidence = p.samples > 0 && p.min_defect > 0.0;
  return p;
}

double h3_product(const ProblemSpec& spec, const ResonanceData& rd, const Vec& e) {
  const DomainElement x{e, GridFn(spec.grid, spec.dim())};
  const PowerFn q = Q_project(apply_N(spec, x), spec, rd);
  return e.dot(rd.J_action() * q.coef);
}

H3Probe probe_H3(const ProblemSpec& spec, const ResonanceData& rd, double A2, int sample_count,
                 std::uint64_t seed) {
  if (!(A2 > 0.0)) throw InputError("probe_H3: A2 must be positive");
  if (rd.dim_ker < 1) throw InputError("probe_H3: not applicable, ker M is trivial");
  std::mt19937_64 rng(seed);
  H3Probe p;
  p.min_product = std::numeric_limits<double>::infinity();
  p.max_product = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < sample_count; ++s) {
    double norm = log_uniform(rng, A2, 10.0 * A2);
    if (norm <= A2) norm = std::nextafter(A2, 2.0 * A2);
    const Vec e = norm * (rd.kerM * random_direction(rng, rd.dim_ker));
    const double prod = h3_product(spec, rd, e);
    p.min_product = std::min(p.min_product, prod);
    p.max_product = std::max(p.max_product, prod);
    ++p.samples;
  }
  if (p.samples > 0 && p.min_product > 0.0) p.sign = 1;
  if (p.samples > 0 && p.max_product < 0.0) p.sign = -1;
  p.evidence = p.sign != 0;
  return p;
}

HypothesisReport check_hypotheses(const ProblemSpec& spec, const ResonanceData& rd,
                                  const std::optional<GrowthSpec>& growth,
                                  const HypothesisOptions& opts) {
  HypothesisReport r;
  r.A1 = opts.A1;
  r.A2 = opts.A2;
  if (growth) {
    r.margin = check_growth_margin(spec.order, rd, *growth);
    r.h1 = check_H1(spec, *growth, opts.h1_samples, opts.seed);
  }
  r.h2 = probe_H2(spec, rd, opts.A1, opts.probe_samples, opts.seed + 1);
  r.h3 = probe_H3(spec, rd, opts.A2, opts.probe_samples, opts.seed + 2);
  return r;
}

}  // namespace fracres
