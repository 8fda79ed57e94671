#pragma once

// Checkers for the hypotheses of the coincidence-degree existence argument.
// The growth bound and the solvability margin are checked directly; the two
// conditions quantified over infinite sets are probed by sampling, which is
// evidence, not proof.

#include "fracres/resonance.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace fracres {

using ScalarFn = std::function<double(double)>;

struct GrowthSpec {
  ScalarFn a1, b1, a2, b2, c;
  /// L1 norms on [0, 1]. When absent they are computed by quadrature.
  std::optional<double> a1_l1, b1_l1, a2_l1, b2_l1, c_l1;
  double gamma1 = 0.0;
  double gamma2 = 0.0;

  void validate() const;
};

/// Constant growth functions with exact L1 norms.
GrowthSpec constant_growth(double a1, double b1, double a2, double b2, double c,
                           double gamma1 = 0.0, double gamma2 = 0.0);

struct L1Norm {
  double value = 0.0;
  /// Zero when the norm was supplied; otherwise a Richardson error estimate.
  double error_estimate = 0.0;
  bool supplied = true;
};

L1Norm l1_norm(const ScalarFn& f, const std::optional<double>& supplied);

struct H1Verdict {
  bool ok = true;
  int samples = 0;
  int violations = 0;
  /// min over samples of bound - ||f||; negative means violated.
  double worst_slack = 0.0;
  double worst_t = 0.0;
  double worst_u_norm = 0.0;
  double worst_v_norm = 0.0;
};

struct H1Sampling {
  double min_norm = 1e-3;
  double max_norm = 1e3;
};

/// Pointwise check of ||f(t,u,v)|| <= a1||u|| + b1||v|| + a2||u||^g1 + b2||v||^g2 + c
/// on random (t, u, v): t uniform, norms of u and v log-uniform.
H1Verdict check_H1(const ProblemSpec& spec, const GrowthSpec& growth, int sample_count,
                   std::uint64_t seed, const H1Sampling& sampling = {});

struct GrowthMargin {
  double gamma_alpha = 0.0;
  double ker_proj_norm = 0.0;  // ||I - M^+ M||
  L1Norm a1_l1;
  L1Norm b1_l1;
  double rhs_a1 = 0.0;  // (||I - M^+ M|| + 1) ||a1||
  double rhs_b1 = 0.0;  // (||I - M^+ M|| + 1) ||b1||
  double rhs = 0.0;     // max of the two
  double margin = 0.0;  // gamma_alpha - rhs
  double quotient = 0.0;
  bool pass = false;
};

GrowthMargin check_growth_margin(const Order& ord, const ResonanceData& rd,
                               const GrowthSpec& growth);

struct H2Probe {
  int samples = 0;
  double min_defect = 0.0;
  double max_defect = 0.0;
  /// Samples skipped because f returned a non-finite value.
  int evaluation_failures = 0;
  /// min_defect > 0
  bool evidence = false;
};

/// Samples x in dom L-representation with ||D^(alpha-1) x(t)|| > A1 for all t
/// and reports d = ||(I - M M^+) h(N x)||.
H2Probe probe_H2(const ProblemSpec& spec, const ResonanceData& rd, double A1, int sample_count,
                 std::uint64_t seed);

struct H3Probe {
  int samples = 0;
  double min_product = 0.0;
  double max_product = 0.0;
  /// +1 or -1 when all products share a strict sign, else 0.
  int sign = 0;
  bool evidence = false;
};

/// <e, J Q N(e t^(alpha-1))> for e in ker M with ||e|| > A2.
double h3_product(const ProblemSpec& spec, const ResonanceData& rd, const Vec& e);

H3Probe probe_H3(const ProblemSpec& spec, const ResonanceData& rd, double A2, int sample_count,
                 std::uint64_t seed);

struct HypothesisReport {
  std::optional<H1Verdict> h1;
  std::optional<GrowthMargin> margin;
  std::optional<H2Probe> h2;
  std::optional<H3Probe> h3;
  double A1 = 0.0;
  double A2 = 0.0;
};

struct HypothesisOptions {
  int h1_samples = 10000;
  int probe_samples = 100;
  double A1 = 1.0;
  double A2 = 1.0;
  std::uint64_t seed = 1;
};

HypothesisReport check_hypotheses(const ProblemSpec& spec, const ResonanceData& rd,
                                  const std::optional<GrowthSpec>& growth,
                                  const HypothesisOptions& opts);

}  // namespace fracres
