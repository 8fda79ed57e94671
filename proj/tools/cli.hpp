#pragma once

#include "fracres/examples.hpp"
#include "fracres/hypotheses.hpp"
#include "fracres/resonance.hpp"
#include "fracres/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracres::cli {

enum ExitCode : int {
  kOk = 0,
  kNotApplicable = 1,  // non-resonant, or growth margin fails
  kNoConvergence = 2,
  kInputError = 3,
};

enum class Command { Analyze, Solve, CheckHypotheses, VerifyExample };

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// Everything a run needs. Problem fields are resolved into `spec` by
/// parse_config or from_builtin.
struct RunConfig {
  Command command = Command::Analyze;
  std::string builtin;  // empty when the problem came from a file
  int k = 1;
  ProblemSpec spec;
  std::optional<GrowthSpec> growth;
  SolveOptions solver;
  int sweep = 0;
  std::uint64_t seed = 1;
  std::string out_dir = "fracres-out";
};

/// Parses the sectioned key/value format:
///
///   [problem]   alpha, xi, grid_n
///   [operator]  builtin + k, or csv = PATH
///   [rhs]       builtin = NAME, or type = affine with C, D (CSV paths),
///               g = zero|one|t|sqrt|sin|cos and g_coef = comma list
///   [solver]    damping, max_iter, tol_fixed_point, tol_residual, tol_pde,
///               seed, sweep
///   [growth]    a1, b1, a2, b2, c (constants), gamma1, gamma2
///
/// Relative CSV paths resolve against the config file's directory. Throws
/// ParseError (with line number) or InputError.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");

/// Builtin problem by name with k blocks on an N-interval grid.
RunConfig from_builtin(const std::string& name, int k, int grid);

/// Checks N >= 8 and xi * N integral; the message names the smallest valid N.
void validate_grid(double xi, int grid);

/// Executes the flow and writes report.txt (and solution.csv for solving
/// flows) into out_dir. Returns an ExitCode.
int run(const RunConfig& cfg);

/// Command-line entry point; never throws.
int main_entry(int argc, char** argv);

/// Writes t, x_1..x_n, dtrace_1..dtrace_n with 17 significant digits.
void write_solution_csv(std::ostream& out, const DomainElement& x, const ProblemSpec& spec);

}  // namespace fracres::cli
