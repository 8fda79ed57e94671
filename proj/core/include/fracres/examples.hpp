#pragma once

// Built-in problems. "section4" is the block system with alpha = 3/2,
// xi = 1/4 and k copies of B = diag(3/2, 7/4, 2) on the diagonal of A,
// truncated to exactly 3k components.

#include "fracres/hypotheses.hpp"
#include "fracres/resonance.hpp"
#include "fracres/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracres {

/// 1/x for x != 0 and 0 for x == 0 (scalar Moore-Penrose inverse).
double pseudo_reciprocal(double x);

/// Right-hand side of the block system; dimension 3k.
Rhs section4_rhs(int k);

ProblemSpec build_section4(int k, int grid = 256);

/// Growth data a1 = b1 = 1/(5 sqrt 3), a2 = b2 = 0, c = (r + 1/r + 1)/10.
GrowthSpec section4_growth(double r = 1.0);

struct GoldenCheck {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct GoldenReport {
  int k = 0;
  int grid = 0;
  std::vector<GoldenCheck> checks;
  std::vector<std::string> notes;
  std::optional<SolveReport> solve;

  bool all_pass() const;
  std::vector<std::string> failures() const;
};

struct Section4Options {
  bool run_solver = true;
  int h3_samples = 50;
  std::uint64_t seed = 7;
  SolveOptions solver;
};

/// Recomputes every constant of the worked block example and, optionally,
/// solves the problem. Failures are enumerated, never thrown.
GoldenReport verify_section4(int k, int grid, const Section4Options& opts = {});

/// Confirms B^2 = diag(9/4, 49/16, 4), so neither A^2 xi^(2a-2) = A xi^(a-1)
/// nor A^2 xi^(2a-2) = I holds for the block example.
GoldenReport non_example_A2_check();

/// Names accepted by make_builtin: "section4", "zero".
std::vector<std::string> builtin_names();
ProblemSpec make_builtin(const std::string& name, int k, int grid);
std::optional<GrowthSpec> builtin_growth(const std::string& name);

}  // namespace fracres
