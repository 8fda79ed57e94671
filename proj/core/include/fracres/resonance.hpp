#pragma once

// Resonance decomposition of the three-point problem
//
//   D^alpha x = f(t, x, D^(alpha-1) x),  I^(2-alpha) x(0) = 0,  x(1) = A x(xi),
//
// built around M = I - xi^(alpha-1) A and its Moore-Penrose inverse.
// Elements of dom L are stored as (c, y) with x = c t^(alpha-1) + I^alpha y.

#include "fracres/fracops.hpp"
#include "fracres/linops.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fracres {

/// f(t, u, v) with u = x(t) and v = D^(alpha-1) x(t). Must be reentrant.
using Rhs = std::function<Vec(double t, const Vec& u, const Vec& v)>;

struct ProblemSpec {
  Order order{1.5};
  double xi = 0.5;
  LinOp A;
  Rhs rhs;
  int grid = 256;
  std::string name;

  int dim() const noexcept { return A.rows(); }
  /// Index of the grid node that coincides with xi.
  int xi_node() const;
  /// Throws InputError when the instance is malformed.
  void validate() const;
};

/// Smallest N >= min_n with xi * N an integer (within 1e-9), or -1 if none
/// exists up to max_n.
int smallest_grid_for(double xi, int min_n, int max_n = 1 << 20);

struct ResonanceData {
  LinOp M;
  LinOp Mplus;
  LinOp P_ranM;    // M M^+
  LinOp P_coranM;  // M^+ M
  Mat kerM;        // orthonormal basis of ker M
  Mat kerMstar;    // orthonormal basis of ker M^T
  int dim_ker = 0;
  int rank = 0;
  double tol_used = 0.0;
  /// Coordinate form of J: im Q (coordinates in kerMstar) -> ker L (coordinates in kerM).
  Mat J;
  /// ||M M^+ K|| for K = kerM; zero exactly when ker M is orthogonal to im M.
  double ep_defect = 0.0;
  std::vector<std::string> warnings;

  int n() const noexcept { return M.rows(); }
  /// I - M M^+
  Mat coker_proj() const;
  /// I - M^+ M
  Mat ker_proj() const;
  /// kerM * J * kerMstar^T, the action of J on vectors of im Q.
  Mat J_action() const;
};

/// Builds M, M^+, projectors, kernel bases and J. tol == 0 selects a rank
/// tolerance scaled by max(1, ||xi^(alpha-1) A||, ||M||), the size of the rounding
/// in forming M. Throws NonResonantError when dim ker M = 0.
ResonanceData build_resonance(const ProblemSpec& spec, double tol = 0.0);

struct DomainElement {
  Vec c;
  GridFn y;
};

/// Grid samples of x = c t^(alpha-1) + I^alpha y.
GridFn evaluate(const DomainElement& x, const ProblemSpec& spec);
/// Grid samples of D^(alpha-1) x = Gamma(alpha) c + I^1 y.
GridFn evaluate_trace(const DomainElement& x, const ProblemSpec& spec);

/// h(y) = A I^alpha y(xi) - I^alpha y(1), by product quadrature.
Vec h_functional(const GridFn& y, const ProblemSpec& spec);
/// h of an exact power function, by beta moments.
Vec h_functional(const PowerFn& y, const ProblemSpec& spec);

/// Scalar prefactor of Q that makes Q idempotent: Gamma(2a) / (Gamma(a) (xi^a - 1)).
double q_prefactor(const Order& ord, double xi);
/// The prefactor as written in the source formula, Gamma(a) Gamma(2a) / (xi^a - 1).
/// Kept for arithmetic reproduction only; Q built with it is not a projector.
double displayed_q_prefactor(const Order& ord, double xi);

/// Q y = coef t^(alpha-1) with coef = q_prefactor (I - M M^+) h(y).
PowerFn Q_project(const GridFn& y, const ProblemSpec& spec, const ResonanceData& rd);
PowerFn Q_project(const PowerFn& y, const ProblemSpec& spec, const ResonanceData& rd);

/// P x = ((I - M^+ M) c, 0), using D^(alpha-1) x(0) = Gamma(alpha) c.
DomainElement P_project(const DomainElement& x, const ResonanceData& rd);

/// K_P y = (M^+ h(y), y).
DomainElement K_P(const GridFn& y, const ProblemSpec& spec, const ResonanceData& rd);

/// y - b with b constant chosen so that (I - M M^+) h(y - b) = 0, i.e. the
/// result lies in the discrete image of L.
GridFn project_onto_image(const GridFn& y, const ProblemSpec& spec, const ResonanceData& rd);

/// Norm of a domain element: max(sup ||x||, sup ||D^(alpha-1) x||).
double domain_norm(const DomainElement& x, const ProblemSpec& spec);

struct StructureCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct StructureReport {
  std::vector<StructureCheck> checks;
  bool all_pass() const;
};

/// Structural identities of the decomposition, reported with residuals:
/// matrix identity, Q idempotency, Q on im L, Q on ker L, L K_P = id.
StructureReport verify_structure(const ProblemSpec& spec, const ResonanceData& rd, int samples,
                                 std::uint64_t seed = 1);

/// Random smooth grid function (low-order trigonometric profile) for probes.
GridFn random_smooth(int intervals, int dim, std::uint64_t seed, double scale = 1.0);

}  // namespace fracres
