// spincycle: rotating-field spin-1/2 workbench.
//
// Subcommands:
//   phases   closed-form vs integrated one-cycle phases for one drive
//   figure   emit curve datasets (fig1, fig2, fig3a, fig3b) as CSV
//   verify   run the library invariant suites
//   solve    two-loop plan solvers (single-qubit and two-qubit), CSV output

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <algorithm>

#include <CLI11.hpp>

#include "spincycle/csv.h"
#include "spincycle/dynamics.h"
#include "spincycle/figures.h"
#include "spincycle/gates.h"
#include "spincycle/loop_solvers.h"
#include "spincycle/phase_formulas.h"
#include "spincycle/verify.h"

using namespace spincycle;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitToleranceFailure = 1;
constexpr int kExitDomainError = 2;

// "start:stop:step" -> ascending grid, endpoints included within rounding.
std::vector<double> parse_grid(const std::string& spec) {
  double start = 0, stop = 0, step = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      step <= 0 || stop < start)
    throw std::domain_error("bad grid spec '" + spec + "', want start:stop:step");
  std::vector<double> grid;
  const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  grid.reserve(count);
  for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
  return grid;
}

// Relative output paths land in $SPINCYCLE_OUTDIR when it is set.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* outdir = std::getenv("SPINCYCLE_OUTDIR");
  if (!outdir || !*outdir) return path;
  std::string dir(outdir);
  if (dir.back() != '/') dir += '/';
  return dir + path;
}

void print_triple_row(const char* label, const PhaseTriple& p) {
  std::printf("  %-12s %14.9f %14.9f %14.9f   (/pi: %10.6f %10.6f %10.6f)\n",
              label, p.geometric, p.dynamic, p.total, p.geometric / pi,
              p.dynamic / pi, p.total / pi);
}

// ---------------------------------------------------------------------------

int run_phases(double w0, double w1, double w, std::optional<double> coupling,
               int delta, int steps, double tol) {
  PhaseTriple closed;
  RotatingFieldSegment seg(w0, w1, w);
  if (coupling) {
    closed = conditional_phases({w0, w1, w, *coupling, delta});
    seg = seg.conditional(*coupling, delta);
  } else {
    closed = single_qubit_phases(w0, w1, w);
  }
  const double chi = seg.cyclic_angle();
  if (steps <= 0) steps = recommended_steps(seg);
  const ExtractionResult num =
      extract_phases(seg, SpinorState::at_polar(chi), steps);

  std::printf("drive: omega0=%g omega1=%g omega=%g", w0, w1, w);
  if (coupling) std::printf(" J=%g delta=%d", *coupling, delta);
  std::printf("\ncyclic angle chi = %.9f rad (%.6f pi)\n", chi, chi / pi);
  std::printf("  %-12s %14s %14s %14s\n", "", "geometric", "dynamic", "total");
  print_triple_row("closed form", closed);
  print_triple_row("integrated", num.phases);
  const PhaseTriple diff{std::abs(num.phases.total - closed.total),
                         std::abs(num.phases.dynamic - closed.dynamic),
                         std::abs(num.phases.geometric - closed.geometric)};
  std::printf("  |difference| %14.3e %14.3e %14.3e\n", diff.geometric,
              diff.dynamic, diff.total);
  const double worst = std::max({diff.total, diff.dynamic, diff.geometric});
  std::printf("match: %s (tolerance %g, steps %d)\n",
              worst < tol ? "OK" : "FAILED", tol, steps);
  return worst < tol ? kExitOk : kExitToleranceFailure;
}

// ---------------------------------------------------------------------------

int run_figure(const std::string& name, const std::string& out,
               const std::string& ratio_spec, const std::string& omega_spec) {
  if (name == "fig1") {
    fig1_csv(fig1_dataset(parse_grid(ratio_spec.empty() ? "0.1:10:0.05" : ratio_spec)))
        .write(out);
    return kExitOk;
  }
  if (name == "fig2") {
    fig2_csv(fig2_dataset(parse_grid(ratio_spec.empty() ? "1.05:10:0.05" : ratio_spec)))
        .write(out);
    return kExitOk;
  }
  if (name == "fig3a" || name == "fig3b") {
    const auto points = fig3_dataset(
        5.0, 5.0, 1.0, parse_grid(omega_spec.empty() ? "0.5:8:0.15" : omega_spec));
    (name == "fig3a" ? fig3a_csv(points) : fig3b_csv(points)).write(out);
    const bool any_failed =
        std::any_of(points.begin(), points.end(), [](const Fig3Point& p) { return !p.ok; });
    return any_failed ? kExitToleranceFailure : kExitOk;
  }
  throw std::domain_error("unknown figure '" + name + "'");
}

// ---------------------------------------------------------------------------

int print_reports(const std::vector<SuiteReport>& reports) {
  bool all_pass = true;
  for (const auto& rep : reports) {
    std::printf("[%s]\n", rep.name.c_str());
    for (const auto& c : rep.checks)
      std::printf("  %-55s %11.3e (< %8.1e)  %s\n", c.label.c_str(), c.value,
                  c.threshold, c.pass ? "ok" : "FAIL");
    std::printf("%s: %s\n", rep.name.c_str(), rep.pass ? "PASS" : "FAIL");
    all_pass = all_pass && rep.pass;
  }
  return all_pass ? kExitOk : kExitToleranceFailure;
}

int run_verify(const std::string& suite) {
  if (suite == "phases") return print_reports({verify_phases()});
  if (suite == "gates") return print_reports({verify_gates()});
  if (suite == "darkstates") return print_reports({verify_darkstates()});
  if (suite == "multiloop") return print_reports({verify_multiloop()});
  if (suite == "all" || suite.empty()) return print_reports(verify_all());
  throw std::domain_error("unknown suite '" + suite + "'");
}

// ---------------------------------------------------------------------------

struct PinArg {
  SingleQubitPin pin;
  std::string spec;
};

int run_solve_single(double gamma_factor, double w1, double w1p,
                     const PinArg& pin_arg, const std::string& out) {
  std::vector<double> pins;
  if (pin_arg.spec.find(':') != std::string::npos)
    pins = parse_grid(pin_arg.spec);
  else
    pins.push_back(std::stod(pin_arg.spec));

  CsvWriter csv({"pinned", "pin_value", "omega", "omega0", "omega0_prime",
                 "residual_max", "Gamma", "dyn_phase_integrated", "status"});
  const char* pin_name = pin_arg.pin == SingleQubitPin::Omega ? "omega"
                         : pin_arg.pin == SingleQubitPin::Omega0 ? "omega0"
                                                                 : "omega0_prime";
  bool any_ok = false;
  std::optional<std::pair<double, double>> seed;
  for (const double pin : pins) {
    const SolverSolution sol =
        solve_single_qubit_two_loop(gamma_factor, w1, w1p, pin_arg.pin, pin, seed);
    if (!sol.converged) {
      csv.add_row({pin_name, format_number(pin), "", "", "", "", "", "", "no_converge"});
      seed.reset();
      continue;
    }
    any_ok = true;
    const TwoLoopIntegration check = integrate_plan(sol.plan);
    csv.add_row({pin_name, format_number(pin),
                 format_number(sol.plan.loop1.omega),
                 format_number(sol.plan.loop1.omega0),
                 format_number(sol.plan.loop2.omega0),
                 format_number(std::max(sol.residuals[0], sol.residuals[1])),
                 format_number(-sol.gamma_geometric / pi),
                 format_number(check.total_dynamic), "ok"});
    // Continuation: this solution seeds the next pin.
    switch (pin_arg.pin) {
      case SingleQubitPin::Omega:
        seed = {{sol.plan.loop1.omega0, sol.plan.loop2.omega0}};
        break;
      case SingleQubitPin::Omega0:
        seed = {{sol.plan.loop1.omega, sol.plan.loop2.omega0}};
        break;
      default:
        seed = {{sol.plan.loop1.omega, sol.plan.loop1.omega0}};
        break;
    }
  }
  if (out.empty())
    std::fputs(csv.str().c_str(), stdout);
  else
    csv.write(out);
  return any_ok ? kExitOk : kExitToleranceFailure;
}

int run_solve_twoqubit(double w0, double w1, double coupling,
                       const std::string& omega_spec, const std::string& out) {
  const auto grid = parse_grid(omega_spec);
  const auto sols = solve_two_qubit_two_loop(w0, w1, coupling, grid);
  CsvWriter csv({"omega", "omega_prime", "omega0_prime", "omega1_prime",
                 "residual_max", "Gamma0", "Gamma1", "dyn_phase0", "dyn_phase1",
                 "nontrivial", "status"});
  bool any_ok = false;
  for (const auto& sol : sols) {
    if (!sol.converged) {
      csv.add_row({format_number(sol.pinned_value), "", "", "", "", "", "", "",
                   "", "", "no_converge"});
      continue;
    }
    any_ok = true;
    const TwoLoopIntegration c0 = integrate_plan(sol.plan, 0);
    const TwoLoopIntegration c1 = integrate_plan(sol.plan, 1);
    csv.add_row({format_number(sol.pinned_value),
                 format_number(sol.plan.loop2.omega),
                 format_number(sol.plan.loop2.omega0),
                 format_number(sol.plan.loop2.omega1),
                 format_number(*std::max_element(sol.residuals.begin(),
                                                 sol.residuals.end())),
                 format_number(-sol.gamma_geometric_delta[0] / pi),
                 format_number(-sol.gamma_geometric_delta[1] / pi),
                 format_number(c0.total_dynamic), format_number(c1.total_dynamic),
                 sol.nontrivial ? "1" : "0", "ok"});
  }
  if (out.empty())
    std::fputs(csv.str().c_str(), stdout);
  else
    csv.write(out);
  return any_ok ? kExitOk : kExitToleranceFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotating-field spin-1/2 phase and gate workbench"};
  app.require_subcommand(1);

  // phases ------------------------------------------------------------------
  auto* cmd_phases = app.add_subcommand("phases", "closed-form vs integrated phases");
  cmd_phases->set_config("--config", "", "key = value configuration file");
  double w0 = 1.0, w1 = 1.0, w = 2.0, tol = 1e-6;
  int steps = 0, delta = 0;
  std::optional<double> coupling;
  cmd_phases->add_option("--omega0", w0, "transverse drive strength")->required();
  cmd_phases->add_option("--omega1", w1, "longitudinal frequency")->required();
  cmd_phases->add_option("--omega", w, "drive rotation rate")->required();
  cmd_phases->add_option("--J", coupling, "spin-spin coupling (conditional phases)");
  cmd_phases->add_option("--delta", delta, "control state (with --J)")
      ->check(CLI::Range(0, 1));
  cmd_phases->add_option("--steps", steps, "integrator steps per cycle (0 = auto)");
  cmd_phases->add_option("--tol", tol, "match tolerance")
      ->check(CLI::PositiveNumber);

  // figure ------------------------------------------------------------------
  auto* cmd_figure = app.add_subcommand("figure", "emit curve datasets as CSV");
  cmd_figure->set_config("--config", "", "key = value configuration file");
  std::string fig_name, fig_out, ratio_spec, omega_spec;
  cmd_figure->add_option("name", fig_name, "fig1 | fig2 | fig3a | fig3b")->required();
  cmd_figure->add_option("--out", fig_out, "output CSV path (default <name>.csv)");
  cmd_figure->add_option("--ratio-grid", ratio_spec, "start:stop:step ratio grid");
  cmd_figure->add_option("--omega-grid", omega_spec, "start:stop:step omega grid");

  // verify ------------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "run the invariant suites");
  std::string suite = "all";
  cmd_verify->add_option("suite", suite, "phases | gates | darkstates | multiloop | all");

  // solve -------------------------------------------------------------------
  auto* cmd_solve = app.add_subcommand("solve", "two-loop plan solvers");
  cmd_solve->require_subcommand(1);

  auto* solve_single = cmd_solve->add_subcommand("single", "single-qubit two-loop plans");
  solve_single->set_config("--config", "", "key = value configuration file");
  double gamma_factor = 0.5, sq_w1 = 1.0, sq_w1p = 1.0;
  std::string pin_omega0, pin_omega, pin_omega0p, solve_out;
  solve_single->add_option("--gamma", gamma_factor,
                           "target geometric phase, units of -pi")->required();
  solve_single->add_option("--omega1", sq_w1, "loop-1 longitudinal frequency");
  solve_single->add_option("--omega1p", sq_w1p, "loop-2 longitudinal frequency");
  solve_single->add_option("--pin-omega0", pin_omega0,
                           "pin omega0 to VALUE or sweep start:stop:step");
  solve_single->add_option("--pin-omega", pin_omega, "pin omega instead");
  solve_single->add_option("--pin-omega0p", pin_omega0p, "pin omega0' instead");
  solve_single->add_option("--out", solve_out, "output CSV path (default stdout)");

  auto* solve_two = cmd_solve->add_subcommand("twoqubit", "two-qubit two-loop plans");
  solve_two->set_config("--config", "", "key = value configuration file");
  double tq_w0 = 5.0, tq_w1 = 5.0, tq_coupling = 1.0;
  std::string tq_grid = "0.5:8:0.15", tq_out;
  solve_two->add_option("--omega0", tq_w0, "loop-1 transverse amplitude");
  solve_two->add_option("--omega1", tq_w1, "loop-1 longitudinal frequency");
  solve_two->add_option("--J", tq_coupling, "spin-spin coupling");
  solve_two->add_option("--omega-grid", tq_grid, "start:stop:step omega sweep");
  solve_two->add_option("--out", tq_out, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitDomainError;
  }

  try {
    if (cmd_phases->parsed())
      return run_phases(w0, w1, w, coupling, delta, steps, tol);
    if (cmd_figure->parsed()) {
      if (fig_out.empty()) fig_out = fig_name + ".csv";
      return run_figure(fig_name, resolve_out(fig_out), ratio_spec, omega_spec);
    }
    if (cmd_verify->parsed()) return run_verify(suite);
    if (solve_single->parsed()) {
      int pin_count = !pin_omega0.empty() + !pin_omega.empty() + !pin_omega0p.empty();
      if (pin_count != 1)
        throw std::domain_error("pick exactly one of --pin-omega0 / --pin-omega / --pin-omega0p");
      PinArg pin_arg = !pin_omega0.empty()
                           ? PinArg{SingleQubitPin::Omega0, pin_omega0}
                           : (!pin_omega.empty()
                                  ? PinArg{SingleQubitPin::Omega, pin_omega}
                                  : PinArg{SingleQubitPin::Omega0Prime, pin_omega0p});
      return run_solve_single(gamma_factor, sq_w1, sq_w1p, pin_arg,
                              solve_out.empty() ? solve_out : resolve_out(solve_out));
    }
    if (solve_two->parsed())
      return run_solve_twoqubit(tq_w0, tq_w1, tq_coupling, tq_grid,
                                tq_out.empty() ? tq_out : resolve_out(tq_out));
  } catch (const NonCyclicError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomainError;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomainError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitToleranceFailure;
  }
  return kExitOk;
}
