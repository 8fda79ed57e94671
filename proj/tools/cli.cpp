#include "cli.hpp"

#include "fracres/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace fracres::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"problem", {"alpha", "xi", "grid_n", "name"}},
      {"operator", {"builtin", "k", "csv"}},
      {"rhs", {"builtin", "type", "C", "D", "g", "g_coef"}},
      {"solver",
       {"damping", "max_iter", "tol_fixed_point", "tol_residual", "tol_pde", "seed", "sweep"}},
      {"growth", {"a1", "b1", "a2", "b2", "c", "gamma1", "gamma2"}},
  };
  return keys;
}

double to_double(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used != e.value.size() || !std::isfinite(v)) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(key + ": expected a number, got '" + e.value + "'", e.line);
  }
}

long to_int(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const long v = std::stol(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(key + ": expected an integer, got '" + e.value + "'", e.line);
  }
}

std::vector<double> to_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(Entry{trim(item), e.line}, key));
  return out;
}

std::function<double(double)> profile(const Entry& e) {
  if (e.value == "zero") return [](double) { return 0.0; };
  if (e.value == "one") return [](double) { return 1.0; };
  if (e.value == "t") return [](double t) { return t; };
  if (e.value == "sqrt") return [](double t) { return std::sqrt(t); };
  if (e.value == "sin") return [](double t) { return std::sin(M_PI * t); };
  if (e.value == "cos") return [](double t) { return std::cos(M_PI * t); };
  throw ParseError("g: unknown profile '" + e.value + "' (zero, one, t, sqrt, sin, cos)", e.line);
}

LinOp load_matrix(const Entry& e, const std::string& base_dir) {
  fs::path p(e.value);
  if (p.is_relative()) p = fs::path(base_dir) / p;
  try {
    return read_matrix_csv_file(p.string());
  } catch (const ParseError& err) {
    throw ParseError(p.string() + ": " + err.what(), e.line);
  } catch (const InputError& err) {
    throw ParseError(err.what(), e.line);
  }
}

const Entry* find(const std::map<std::string, Section>& doc, const std::string& sec,
                  const std::string& key) {
  const auto s = doc.find(sec);
  if (s == doc.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "analyze") return Command::Analyze;
  if (name == "solve") return Command::Solve;
  if (name == "check-hypotheses") return Command::CheckHypotheses;
  if (name == "verify-example") return Command::VerifyExample;
  throw InputError("unknown command '" + name +
                   "' (analyze, solve, check-hypotheses, verify-example)");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Solve: return "solve";
    case Command::CheckHypotheses: return "check-hypotheses";
    case Command::VerifyExample: return "verify-example";
  }
  return "?";
}

void validate_grid(double xi, int grid) {
  if (grid < 8) throw GridError("grid_n must be at least 8, got " + std::to_string(grid));
  const int n = smallest_grid_for(xi, grid, grid);
  if (n == grid) return;
  std::ostringstream os;
  os << "xi * N must be an integer: xi = " << xi << ", N = " << grid;
  const int smallest = smallest_grid_for(xi, 8);
  if (smallest > 0) os << "; smallest valid N is " << smallest;
  const int next = smallest_grid_for(xi, grid);
  if (next > 0 && next != smallest) os << " (next valid N above " << grid << " is " << next << ")";
  throw GridError(os.str());
}

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  std::map<std::string, Section> doc;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", line);
      current = trim(s.substr(1, s.size() - 2));
      if (!known_keys().count(current)) throw ParseError("unknown section [" + current + "]", line);
      if (doc.count(current)) throw ParseError("duplicate section [" + current + "]", line);
      doc[current];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    if (current.empty()) throw ParseError("key outside of any section", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!known_keys().at(current).count(key)) {
      throw ParseError("unknown key '" + key + "' in [" + current + "]", line);
    }
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line);
    if (doc[current].count(key)) throw ParseError("duplicate key '" + key + "'", line);
    doc[current][key] = Entry{value, line};
  }

  RunConfig cfg;
  ProblemSpec& spec = cfg.spec;

  // Operator first: a builtin operator supplies default alpha and xi.
  const Entry* op_builtin = find(doc, "operator", "builtin");
  const Entry* op_csv = find(doc, "operator", "csv");
  if (op_builtin && op_csv) throw ParseError("[operator] takes builtin or csv, not both", op_csv->line);
  if (!op_builtin && !op_csv) throw InputError("[operator] needs builtin or csv");
  if (const Entry* k = find(doc, "operator", "k")) {
    cfg.k = static_cast<int>(to_int(*k, "k"));
    if (cfg.k < 1) throw ParseError("k must be >= 1", k->line);
  }
  const Entry* alpha = find(doc, "problem", "alpha");
  const Entry* xi = find(doc, "problem", "xi");
  if (op_builtin) {
    if (op_builtin->value != "section4") {
      throw ParseError("unknown builtin operator '" + op_builtin->value + "'", op_builtin->line);
    }
    const ProblemSpec base = build_section4(cfg.k, 256);
    spec.A = base.A;
    spec.order = base.order;
    spec.xi = base.xi;
  } else {
    spec.A = load_matrix(*op_csv, base_dir);
    if (!alpha || !xi) throw InputError("[problem] needs alpha and xi for a CSV operator");
  }
  if (alpha) {
    const double a = to_double(*alpha, "alpha");
    if (!(a > 1.0 && a <= 2.0)) throw ParseError("alpha must lie in (1, 2]", alpha->line);
    spec.order = Order(a);
  }
  if (xi) {
    spec.xi = to_double(*xi, "xi");
    if (!(spec.xi > 0.0 && spec.xi < 1.0)) throw ParseError("xi must lie in (0, 1)", xi->line);
  }
  if (!spec.A.square()) throw InputError("operator matrix must be square");
  if (const Entry* g = find(doc, "problem", "grid_n")) {
    spec.grid = static_cast<int>(to_int(*g, "grid_n"));
  }
  if (const Entry* nm = find(doc, "problem", "name")) spec.name = nm->value;
  const int n = spec.dim();

  // Right-hand side.
  const Entry* rhs_builtin = find(doc, "rhs", "builtin");
  const Entry* rhs_type = find(doc, "rhs", "type");
  if (rhs_builtin && rhs_type) throw ParseError("[rhs] takes builtin or type, not both", rhs_type->line);
  if (rhs_builtin) {
    const std::string& name = rhs_builtin->value;
    if (name == "section4") {
      if (n % 3 != 0) throw ParseError("section4 rhs needs dimension 3k", rhs_builtin->line);
      spec.rhs = section4_rhs(n / 3);
      cfg.growth = builtin_growth("section4");
    } else if (name == "zero") {
      spec.rhs = [n](double, const Vec&, const Vec&) { return Vec::Zero(n); };
      cfg.growth = builtin_growth("zero");
    } else {
      throw ParseError("unknown builtin rhs '" + name + "'", rhs_builtin->line);
    }
    if (spec.name.empty()) spec.name = name;
    if (op_builtin && name == "section4") cfg.builtin = "section4";
  } else if (rhs_type) {
    if (rhs_type->value != "affine") throw ParseError("rhs type must be 'affine'", rhs_type->line);
    Mat c = Mat::Zero(n, n);
    Mat d = Mat::Zero(n, n);
    if (const Entry* e = find(doc, "rhs", "C")) c = load_matrix(*e, base_dir).matrix();
    if (const Entry* e = find(doc, "rhs", "D")) d = load_matrix(*e, base_dir).matrix();
    if (c.rows() != n || c.cols() != n || d.rows() != n || d.cols() != n) {
      throw InputError("affine rhs: C and D must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    std::function<double(double)> g = [](double) { return 0.0; };
    if (const Entry* e = find(doc, "rhs", "g")) g = profile(*e);
    Vec coef = Vec::Zero(n);
    if (const Entry* e = find(doc, "rhs", "g_coef")) {
      const auto v = to_list(*e, "g_coef");
      if (static_cast<int>(v.size()) != n) {
        throw ParseError("g_coef needs " + std::to_string(n) + " entries", e->line);
      }
      coef = Eigen::Map<const Vec>(v.data(), n);
    }
    spec.rhs = [c, d, g, coef](double t, const Vec& u, const Vec& v) -> Vec {
      return c * u + d * v + g(t) * coef;
    };
    if (spec.name.empty()) spec.name = "affine";
  } else {
    throw InputError("[rhs] needs builtin or type");
  }

  // Solver.
  SolveOptions& so = cfg.solver;
  if (const Entry* e = find(doc, "solver", "damping")) so.damping = to_double(*e, "damping");
  if (const Entry* e = find(doc, "solver", "max_iter")) so.max_iter = static_cast<int>(to_int(*e, "max_iter"));
  if (const Entry* e = find(doc, "solver", "tol_fixed_point")) so.tol_fixed_point = to_double(*e, "tol_fixed_point");
  if (const Entry* e = find(doc, "solver", "tol_residual")) so.tol_residual = to_double(*e, "tol_residual");
  if (const Entry* e = find(doc, "solver", "tol_pde")) so.tol_pde = to_double(*e, "tol_pde");
  if (const Entry* e = find(doc, "solver", "seed")) {
    cfg.seed = static_cast<std::uint64_t>(to_int(*e, "seed"));
    so.seed = cfg.seed;
  }
  if (const Entry* e = find(doc, "solver", "sweep")) {
    cfg.sweep = static_cast<int>(to_int(*e, "sweep"));
    if (cfg.sweep < 0) throw ParseError("sweep must be >= 0", e->line);
  }

  // Growth data; constants only, so the L1 norms are exact.
  if (doc.count("growth")) {
    auto get = [&](const char* key) {
      const Entry* e = find(doc, "growth", key);
      if (!e) return 0.0;
      const double v = to_double(*e, key);
      if (v < 0.0) throw ParseError(std::string(key) + " must be >= 0", e->line);
      return v;
    };
    cfg.growth = constant_growth(get("a1"), get("b1"), get("a2"), get("b2"), get("c"),
                                 get("gamma1"), get("gamma2"));
    cfg.growth->validate();
  }

  so.validate();
  validate_grid(spec.xi, spec.grid);
  spec.validate();
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const fs::path p(path);
  return parse_config_text(ss.str(), p.has_parent_path() ? p.parent_path().string() : ".");
}

RunConfig from_builtin(const std::string& name, int k, int grid) {
  RunConfig cfg;
  cfg.builtin = name;
  cfg.k = k;
  validate_grid(0.25, grid);
  cfg.spec = make_builtin(name, k, grid);
  cfg.growth = builtin_growth(name);
  return cfg;
}

void write_solution_csv(std::ostream& out, const DomainElement& x, const ProblemSpec& spec) {
  const GridFn xs = evaluate(x, spec);
  const GridFn ds = evaluate_trace(x, spec);
  const int n = spec.dim();
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  for (int i = 1; i <= n; ++i) out << ",dtrace_" << i;
  out << "\n";
  for (int j = 0; j <= spec.grid; ++j) {
    out << fmt(xs.node(j));
    for (int i = 0; i < n; ++i) out << "," << fmt(xs.values()(j, i));
    for (int i = 0; i < n; ++i) out << "," << fmt(ds.values()(j, i));
    out << "\n";
  }
}

namespace {

void report_header(std::ostream& r, const RunConfig& cfg) {
  const ProblemSpec& s = cfg.spec;
  r << "fracres report\n"
    << "command: " << command_name(cfg.command) << "\n"
    << "problem: " << (s.name.empty() ? "unnamed" : s.name) << "\n"
    << "alpha: " << fmt(s.order.alpha()) << "\n"
    << "xi: " << fmt(s.xi) << "\n"
    << "grid N: " << s.grid << "\n"
    << "dimension n: " << s.dim() << "\n\n";
}

void report_resonance(std::ostream& r, const ResonanceData& rd) {
  r << "[resonance]\n"
    << "rank M: " << rd.rank << "\n"
    << "dim ker M: " << rd.dim_ker << "\n"
    << "rank tolerance: " << fmt6(rd.tol_used) << "\n"
    << "ep_defect: " << fmt6(rd.ep_defect) << "\n"
    << "||M+||: " << fmt6(operator_norm(rd.Mplus)) << "\n"
    << "||I - M+ M||: " << fmt6(operator_norm(rd.ker_proj())) << "\n";
  for (const auto& w : rd.warnings) r << "warning: " << w << "\n";
  r << "\n";
}

bool report_condition31(std::ostream& r, const GrowthMargin& c) {
  r << "[growth margin]\n"
    << "gamma(alpha): " << fmt(c.gamma_alpha) << "\n"
    << "(||I - M+ M|| + 1) ||a1||: " << fmt(c.rhs_a1) << "\n"
    << "(||I - M+ M|| + 1) ||b1||: " << fmt(c.rhs_b1) << "\n"
    << "right side (max): " << fmt(c.rhs) << "\n"
    << "product quotient: " << fmt(c.quotient) << "\n"
    << "verdict: " << (c.pass ? "PASS" : "FAIL") << "\n\n";
  return c.pass;
}

void report_residuals(std::ostream& r, const SolveReport& s) {
  r << "converged: " << (s.converged ? "yes" : "no") << "\n"
    << "diverged: " << (s.diverged ? "yes" : "no") << "\n"
    << "iterations: " << s.iterations << "\n"
    << "message: " << s.message << "\n"
    << "final step: " << (s.history.empty() ? 0.0 : s.history.back()) << "\n"
    << "pde_residual: " << fmt6(s.residuals.pde_residual) << "\n"
    << "left_bc_defect: " << fmt6(s.residuals.left_bc_defect) << "\n"
    << "right_bc_defect: " << fmt6(s.residuals.right_bc_defect) << "\n"
    << "solvability_defect: " << fmt6(s.residuals.solvability_defect) << "\n";
  r << "c:";
  for (int i = 0; i < s.solution.c.size(); ++i) r << " " << fmt(s.solution.c(i));
  r << "\n";
}

void write_csv_file(const fs::path& dir, const SolveReport& s, const ProblemSpec& spec) {
  if (!s.solution.c.allFinite() || !s.solution.y.values().allFinite()) return;
  std::ofstream out(dir / "solution.csv");
  write_solution_csv(out, s.solution, spec);
}

int flow(const RunConfig& cfg, std::ostream& r, const fs::path& dir) {
  const ProblemSpec& spec = cfg.spec;
  ResonanceData rd;
  try {
    rd = build_resonance(spec);
  } catch (const NonResonantError& e) {
    r << "[resonance]\nnon-resonant: " << e.what() << "\n";
    return kNotApplicable;
  }
  report_resonance(r, rd);

  bool cond_ok = true;
  if (cfg.growth) cond_ok = report_condition31(r, check_growth_margin(spec.order, rd, *cfg.growth));

  int code = kOk;
  switch (cfg.command) {
    case Command::Analyze: {
      const StructureReport st = verify_structure(spec, rd, 20, cfg.seed);
      r << "[structure]\n";
      for (const auto& c : st.checks) {
        r << (c.pass ? "PASS " : "FAIL ") << c.name << ": residual " << fmt6(c.residual)
          << " (tolerance " << fmt6(c.tolerance) << ")\n";
      }
      const double a_norm = operator_norm(spec.A);
      r << "K_P constant 1 + ||M+||(1 + ||A||): "
        << fmt(1.0 + operator_norm(rd.Mplus) * (1.0 + a_norm)) << "\n\n";
      break;
    }
    case Command::Solve: {
      if (cfg.sweep > 0) {
        const auto runs = solve_sweep(spec, rd, cfg.solver, cfg.sweep);
        int first_ok = -1;
        for (std::size_t i = 0; i < runs.size(); ++i) {
          r << "[solve " << i + 1 << " of " << runs.size() << "]\n";
          report_residuals(r, runs[i]);
          r << "\n";
          if (first_ok < 0 && runs[i].converged) first_ok = static_cast<int>(i);
        }
        write_csv_file(dir, runs[first_ok < 0 ? 0 : first_ok], spec);
        if (first_ok < 0) code = kNoConvergence;
      } else {
        const SolveReport s = solve(spec, rd, cfg.solver);
        r << "[solve]\n";
        report_residuals(r, s);
        r << "\n";
        write_csv_file(dir, s, spec);
        if (!s.converged) code = kNoConvergence;
      }
      break;
    }
    case Command::CheckHypotheses: {
      HypothesisOptions ho;
      ho.seed = cfg.seed;
      const HypothesisReport h = check_hypotheses(spec, rd, cfg.growth, ho);
      if (h.h1) {
        r << "[H1 sampled]\n"
          << "samples: " << h.h1->samples << "\n"
          << "violations: " << h.h1->violations << "\n"
          << "worst slack: " << fmt6(h.h1->worst_slack) << " at t = " << fmt6(h.h1->worst_t)
          << ", |u| = " << fmt6(h.h1->worst_u_norm) << ", |v| = " << fmt6(h.h1->worst_v_norm)
          << "\n\n";
      }
      r << "[H2 sampled evidence, A1 = " << h.A1 << "]\n"
        << "samples: " << h.h2->samples << "\n"
        << "evaluation failures: " << h.h2->evaluation_failures << "\n"
        << "min defect: " << fmt6(h.h2->min_defect) << "\n"
        << "max defect: " << fmt6(h.h2->max_defect) << "\n"
        << "evidence: " << (h.h2->evidence ? "yes" : "no") << "\n\n";
      r << "[H3 sampled evidence, A2 = " << h.A2 << "]\n"
        << "samples: " << h.h3->samples << "\n"
        << "min product: " << fmt6(h.h3->min_product) << "\n"
        << "max product: " << fmt6(h.h3->max_product) << "\n"
        << "sign: " << h.h3->sign << "\n"
        << "evidence: " << (h.h3->evidence ? "yes" : "no") << "\n\n";
      r << "note: sampled evidence is not a proof\n\n";
      break;
    }
    case Command::VerifyExample: {
      if (cfg.builtin != "section4") {
        throw InputError("verify-example needs the builtin problem 'section4'");
      }
      Section4Options o;
      o.solver = cfg.solver;
      o.seed = cfg.seed;
      const GoldenReport g = verify_section4(cfg.k, spec.grid, o);
      int passed = 0;
      r << "[golden checks]\n";
      for (const auto& c : g.checks) {
        passed += c.pass ? 1 : 0;
        r << (c.pass ? "PASS " : "FAIL ") << c.name << ": expected " << fmt(c.expected)
          << ", computed " << fmt(c.computed) << ", residual " << fmt6(c.residual)
          << ", tolerance " << fmt6(c.tolerance) << "\n";
      }
      r << "passed " << passed << " of " << g.checks.size() << "\n\n";
      const GoldenReport a2 = non_example_A2_check();
      r << "[B^2 checks]\n";
      for (const auto& c : a2.checks) r << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
      r << "\n[notes]\n";
      for (const auto& s : g.notes) r << "- " << s << "\n";
      r << "\n";
      if (g.solve) {
        r << "[solve]\n";
        report_residuals(r, *g.solve);
        r << "\n";
        write_csv_file(dir, *g.solve, spec);
        if (!g.solve->converged) code = kNoConvergence;
      }
      break;
    }
  }
  if (code == kOk && !cond_ok) code = kNotApplicable;
  return code;
}

}  // namespace

int run(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory '" << cfg.out_dir << "': " << ec.message()
              << "\n";
    return kInputError;
  }
  std::ostringstream r;
  report_header(r, cfg);
  int code = kOk;
  try {
    code = flow(cfg, r, dir);
  } catch (const InputError& e) {
    r << "input error: " << e.what() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    code = kInputError;
  } catch (const DomainError& e) {
    r << "input error: " << e.what() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    code = kInputError;
  }
  r << "exit code: " << code << "\n";
  std::ofstream(dir / "report.txt") << r.str();
  return code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Fractional three-point boundary value problems at resonance"};
  std::string command;
  std::string config;
  std::string builtin;
  int k = 1;
  std::optional<int> grid;
  std::optional<double> damping;
  std::optional<int> max_iter;
  std::optional<std::uint64_t> seed;
  std::string out = "fracres-out";
  int sweep = 0;
  app.add_option("command", command, "analyze | solve | check-hypotheses | verify-example")
      ->required();
  auto* o_config = app.add_option("--config", config, "problem configuration file");
  auto* o_builtin = app.add_option("--builtin", builtin, "builtin problem (section4, zero)");
  o_config->excludes(o_builtin);
  app.add_option("--k", k, "number of 3x3 blocks for builtin problems")->check(CLI::PositiveNumber);
  app.add_option("--grid", grid, "number of grid intervals N");
  app.add_option("--damping", damping, "relaxation parameter in (0, 1]");
  app.add_option("--max-iter", max_iter, "iteration limit");
  app.add_option("--seed", seed, "random seed for probes and sweeps");
  app.add_option("--out", out, "output directory");
  app.add_option("--sweep", sweep, "solve from this many random kernel initialisations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    RunConfig cfg;
    if (!config.empty()) {
      cfg = parse_config(config);
    } else if (!builtin.empty()) {
      cfg = from_builtin(builtin, k, grid.value_or(256));
    } else {
      throw InputError("either --config or --builtin is required");
    }
    cfg.command = parse_command(command);
    if (grid) {
      validate_grid(cfg.spec.xi, *grid);
      cfg.spec.grid = *grid;
    }
    if (damping) cfg.solver.damping = *damping;
    if (max_iter) cfg.solver.max_iter = *max_iter;
    if (seed) {
      cfg.seed = *seed;
      cfg.solver.seed = *seed;
    }
    if (sweep < 0) throw InputError("--sweep must be >= 0");
    if (sweep > 0) cfg.sweep = sweep;
    cfg.out_dir = out;
    cfg.solver.validate();
    const int code = run(cfg);
    std::cout << "wrote " << (fs::path(out) / "report.txt").string() << " (exit " << code << ")\n";
    return code;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace fracres::cli
