#include "support.hpp"

#include "fracres/error.hpp"
#include "fracres/examples.hpp"
#include "fracres/hypotheses.hpp"
#include "fracres/solver.hpp"

#include <doctest.h>

using namespace fracres;
using namespace fracres::test;

namespace {

ProblemSpec with_rhs(ProblemSpec s, Rhs f) {
  s.rhs = std::move(f);
  return s;
}

}  // namespace

TEST_SUITE("hypotheses") {

TEST_CASE("growth spec validation") {
  GrowthSpec g = constant_growth(0, 0, 0, 0, 0);
  CHECK_NOTHROW(g.validate());
  g.gamma1 = 1.0;
  CHECK_THROWS_AS(g.validate(), InputError);
  g = constant_growth(0, 0, 0, 0, 0);
  g.a1_l1 = -1.0;
  CHECK_THROWS_AS(g.validate(), InputError);
  g = constant_growth(0, 0, 0, 0, 0);
  g.c = nullptr;
  CHECK_THROWS_AS(g.validate(), InputError);
}

TEST_CASE("L1 norms: supplied or by quadrature") {
  const L1Norm s = l1_norm([](double) { return 7.0; }, 2.5);
  CHECK(s.supplied);
  CHECK(s.value == 2.5);
  const L1Norm q = l1_norm([](double t) { return std::sqrt(t); }, std::nullopt);
  CHECK_FALSE(q.supplied);
  CHECK(std::abs(q.value - 2.0 / 3.0) <= 1e-6);
  CHECK(q.error_estimate <= 1e-5);
  // Weak endpoint singularity, never evaluated at t = 0.
  const L1Norm w = l1_norm([](double t) { return 1.0 / std::sqrt(t); }, std::nullopt);
  CHECK(std::abs(w.value - 2.0) <= 1e-2);
}

TEST_CASE("H1 on the block example finds the reciprocal term unbounded") {
  // The bound a1 |u| + b1 |v| + c cannot hold: on |v| >= 1 the first
  // component contains 1/(10 v_1), which is unbounded as v_1 -> 0.
  for (int k = 1; k <= 3; ++k) {
    const ProblemSpec s = build_section4(k, 64);
    const H1Verdict v = check_H1(s, section4_growth(), 10000, 1);
    CAPTURE(k);
    CHECK(v.samples == 10000);
    CHECK_FALSE(v.ok);
    CHECK(v.violations > 0);
    CHECK(v.worst_slack < -10.0);
    CHECK(v.worst_v_norm >= 1.0);
  }
  // Away from v_1 = 0 the bound holds.
  const ProblemSpec s = build_section4(1, 64);
  const GrowthSpec g = section4_growth();
  const Eigen::Vector3d u(0.3, -2.0, 1.0), v(2.0, 0.5, -3.0);
  const double fn = s.rhs(0.5, u, v).norm();
  CHECK(fn <= g.a1(0.5) * u.norm() + g.b1(0.5) * v.norm() + g.c(0.5));
}

TEST_CASE("H1 trivial and quadratic cases") {
  const ProblemSpec z = make_builtin("zero", 1, 64);
  const H1Verdict ok = check_H1(z, constant_growth(0, 0, 0, 0, 0), 1000, 3);
  CHECK(ok.ok);
  CHECK(ok.worst_slack == 0.0);

  const ProblemSpec q = with_rhs(z, [](double, const Vec& u, const Vec&) {
    Vec f = Vec::Zero(u.size());
    f(0) = u.squaredNorm();
    return f;
  });
  const H1Verdict bad = check_H1(q, constant_growth(1.0, 1.0, 0, 0, 1.0), 2000, 3);
  CHECK_FALSE(bad.ok);
  CHECK(bad.worst_u_norm > 2.0);
  CHECK_THROWS_AS(check_H1(z, constant_growth(0, 0, 0, 0, 0), 0, 1), InputError);
}

TEST_CASE("growth margin for the block example") {
  const ProblemSpec s = build_section4(1, 64);
  const ResonanceData rd = build_resonance(s);
  const GrowthMargin m = check_growth_margin(s.order, rd, section4_growth());
  CHECK(std::abs(m.gamma_alpha - 0.886227) <= 1e-6);
  CHECK(std::abs(m.rhs - 0.230940) <= 1e-6);
  CHECK(std::abs(m.quotient - 0.124204) <= 1e-6);
  CHECK(m.ker_proj_norm == doctest::Approx(1.0));
  CHECK(m.pass);
  CHECK(m.quotient < 1.0);
}

TEST_CASE("growth margin edge cases") {
  const ProblemSpec s = build_section4(1, 64);
  const ResonanceData rd = build_resonance(s);
  const GrowthMargin zero = check_growth_margin(s.order, rd, constant_growth(0, 0, 0, 0, 1));
  CHECK(zero.margin == doctest::Approx(fracres::gamma(1.5)));
  CHECK(zero.quotient == 0.0);
  CHECK(zero.pass);

  // (||I - M^+ M|| + 1) ||a1|| = Gamma(alpha) violates the strict inequality.
  const double a = fracres::gamma(1.5) / 2.0;
  const GrowthMargin edge = check_growth_margin(s.order, rd, constant_growth(a, 0, 0, 0, 0));
  CHECK_FALSE(edge.pass);
}

TEST_CASE("growth margin is invariant under block permutation") {
  const ProblemSpec s = build_section4(2, 64);
  ProblemSpec p = s;
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(6);
  perm.indices() << 3, 4, 5, 0, 1, 2;
  p.A = LinOp(Mat(perm * s.A.matrix() * perm.transpose()));
  const GrowthMargin a = check_growth_margin(s.order, build_resonance(s), section4_growth());
  const GrowthMargin b = check_growth_margin(p.order, build_resonance(p), section4_growth());
  CHECK(a.rhs == doctest::Approx(b.rhs).epsilon(1e-14));
  CHECK(a.quotient == doctest::Approx(b.quotient).epsilon(1e-14));
  CHECK(a.pass == b.pass);
}

TEST_CASE("H2 probe") {
  const ProblemSpec s = build_section4(1, 128);
  const ResonanceData rd = build_resonance(s);
  const H2Probe p = probe_H2(s, rd, 2.0, 100, 5);
  CHECK(p.samples == 100);
  CHECK(p.evaluation_failures == 0);
  CHECK(p.min_defect > 0.0);
  CHECK(p.evidence);

  const H2Probe again = probe_H2(s, rd, 2.0, 100, 5);
  CHECK(again.min_defect == p.min_defect);
  CHECK(again.max_defect == p.max_defect);

  const ProblemSpec z = make_builtin("zero", 1, 128);
  const H2Probe pz = probe_H2(z, build_resonance(z), 1.0, 20, 5);
  CHECK(pz.max_defect == 0.0);
  CHECK_FALSE(pz.evidence);

  const Vec g = Eigen::Vector3d(0.0, 0.0, 1.0);
  const ProblemSpec c = with_rhs(z, [g](double, const Vec&, const Vec&) { return g; });
  const double expected =
      (rd.coker_proj() * h_functional(GridFn::sample(128, 3, [g](double) { return g; }), c)).norm();
  CHECK(expected > 0.0);
  const H2Probe pc = probe_H2(c, rd, 1.0, 20, 5);
  CHECK(pc.min_defect == doctest::Approx(expected).epsilon(1e-12));
  CHECK(pc.max_defect == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(probe_H2(s, rd, 0.0, 10, 1), InputError);
}

TEST_CASE("H3 probe on the block example") {
  for (int k = 1; k <= 3; ++k) {
    const ProblemSpec s = build_section4(k, 128);
    const ResonanceData rd = build_resonance(s);
    const H3Probe p = probe_H3(s, rd, 1.0, 50, 7);
    CAPTURE(k);
    CHECK(p.samples == 50);
    CHECK(p.min_product > 0.0);
    CHECK(p.sign == 1);
    CHECK(p.evidence);
    const H3Probe again = probe_H3(s, rd, 1.0, 50, 7);
    CHECK(again.min_product == p.min_product);
  }
}

TEST_CASE("H3 product is quadratic in e and matches the closed form") {
  const ProblemSpec s = build_section4(1, 1024);
  const ResonanceData rd = build_resonance(s);
  Vec e = Vec::Zero(3);
  e(2) = 1.5;
  const double p1 = h3_product(s, rd, e);
  const double p2 = h3_product(s, rd, 2.0 * e);
  CHECK(p2 == doctest::Approx(4.0 * p1).epsilon(1e-12));

  // <e, J Q N(e t^(1/2))> = q_prefactor (2 d_hat - d_tilde) sigma^2 / (20 sqrt(pi)).
  const double d_hat = M_PI / 128.0 + kSqrtPi / 24.0;
  const double d_tilde = M_PI / 8.0 + kSqrtPi / 3.0;
  CHECK(2.0 * d_hat - d_tilde < 0.0);
  const double exact = q_prefactor(s.order, s.xi) * (2.0 * d_hat - d_tilde) * 1.5 * 1.5 /
                       (20.0 * kSqrtPi);
  CHECK(p1 == doctest::Approx(exact).epsilon(1e-5));
  CHECK(p1 > 0.0);
}

TEST_CASE("H3 probe trivial cases") {
  const ProblemSpec z = make_builtin("zero", 1, 64);
  const H3Probe p = probe_H3(z, build_resonance(z), 1.0, 10, 1);
  CHECK(p.min_product == 0.0);
  CHECK(p.max_product == 0.0);
  CHECK(p.sign == 0);
  CHECK_FALSE(p.evidence);
  CHECK_THROWS_AS(probe_H3(z, ResonanceData{}, 1.0, 10, 1), InputError);
}

TEST_CASE("combined report") {
  const ProblemSpec s = build_section4(1, 64);
  HypothesisOptions o;
  o.h1_samples = 500;
  o.probe_samples = 10;
  const HypothesisReport r = check_hypotheses(s, build_resonance(s), section4_growth(), o);
  REQUIRE(r.h1);
  REQUIRE(r.margin);
  REQUIRE(r.h2);
  REQUIRE(r.h3);
  CHECK(r.margin->pass);
  CHECK(r.h3->sign == 1);
  const HypothesisReport none = check_hypotheses(s, build_resonance(s), std::nullopt, o);
  CHECK_FALSE(none.h1);
  CHECK_FALSE(none.margin);
}

}  // TEST_SUITE
