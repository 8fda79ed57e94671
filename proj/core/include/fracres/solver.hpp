#pragma once

// Nonlinear layer: the Nemytskii operator N, the equivalent fixed-point map
//
//   Phi x = P x + J Q N x + K_P (I - Q) N x,
//
// damped Picard iteration on it, and residual measurement.

#include "fracres/resonance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fracres {

struct SolveOptions {
  double damping = 0.5;
  int max_iter = 500;
  double tol_fixed_point = 1e-10;
  double tol_residual = 1e-6;
  /// Tolerance on the grid-limited PDE residual.
  double tol_pde = 1e-2;
  std::optional<DomainElement> initial;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Residuals {
  /// Interior sup-norm of D^alpha x - f(t, x, D^(alpha-1) x), two nodes dropped per end.
  double pde_residual = 0.0;
  double left_bc_defect = 0.0;
  /// max(||M c - h(y)||, ||x(1) - A x(xi)|| from grid samples).
  double right_bc_defect = 0.0;
  /// ||(I - M M^+) h(N x)||
  double solvability_defect = 0.0;
};

struct SolveReport {
  bool converged = false;
  bool diverged = false;
  int iterations = 0;
  DomainElement solution;
  std::vector<double> history;
  Residuals residuals;
  std::string message;
};

/// Grid samples of f(t, x(t), D^(alpha-1) x(t)). Throws EvaluationError
/// carrying the node index when f returns a non-finite value.
GridFn apply_N(const ProblemSpec& spec, const DomainElement& x);

DomainElement fixed_point_map(const ProblemSpec& spec, const ResonanceData& rd,
                              const DomainElement& x);

/// max(||c_a - c_b||, sup_j ||y_a(t_j) - y_b(t_j)||)
double iterate_distance(const DomainElement& a, const DomainElement& b);

Residuals residuals(const ProblemSpec& spec, const ResonanceData& rd, const DomainElement& x);

/// Damped iteration x <- (1 - damping) x + damping Phi(x). Never throws on
/// valid input; the report states why iteration stopped.
SolveReport solve(const ProblemSpec& spec, const ResonanceData& rd, const SolveOptions& opts);

/// Solves from `count` initial guesses whose ker M components are drawn
/// from a standard normal with the given seed (scaled by `spread`).
std::vector<SolveReport> solve_sweep(const ProblemSpec& spec, const ResonanceData& rd,
                                     const SolveOptions& opts, int count, double spread = 1.0);

struct BoundCoefficients {
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
};

struct Bound {
  double z1 = 0.0;
  double z2 = 0.0;
  int iterations = 0;
};

/// Certified bound for every (z1, z2) >= 0 satisfying
///   z1 <= l1 z1^g1 + l2 z2 + l3,   z2 <= m1 z1 + m2 z2^g2 + m3.
/// Throws NoBoundError when l2 m1 >= 1.
Bound apriori_bound(const BoundCoefficients& k);

}  // namespace fracres
