#include "spincycle/figures.h"

#include "spincycle/loop_solvers.h"
#include "spincycle/phase_formulas.h"

namespace spincycle {

std::vector<Fig1Point> fig1_dataset(const std::vector<double>& ratios) {
  std::vector<Fig1Point> out;
  out.reserve(ratios.size());
  for (const double ratio : ratios) {
    const double w0 = 1.0, w1 = ratio;
    const double w = dark_state_frequency_single(w0, w1);
    out.push_back({ratio, single_qubit_phases(w0, w1, w).geometric / pi});
  }
  return out;
}

std::vector<Fig2Point> fig2_dataset(const std::vector<double>& ratios) {
  std::vector<Fig2Point> out;
  out.reserve(ratios.size());
  for (const double ratio : ratios) {
    const double coupling = 1.0, w1 = ratio;
    const auto cond = dark_state_condition_two_qubit(w1, coupling);
    const double g0 =
        conditional_phases({cond.omega0, w1, cond.omega, coupling, 0}).geometric;
    const double g1 =
        conditional_phases({cond.omega0, w1, cond.omega, coupling, 1}).geometric;
    out.push_back({ratio, g0 / pi, g1 / pi});
  }
  return out;
}

std::vector<Fig3Point> fig3_dataset(double omega0, double omega1, double coupling,
                                    const std::vector<double>& omega_grid) {
  std::vector<Fig3Point> out;
  out.reserve(omega_grid.size());
  for (const auto& sol : solve_two_qubit_two_loop(omega0, omega1, coupling, omega_grid)) {
    Fig3Point p;
    p.omega = sol.pinned_value;
    p.ok = sol.converged;
    if (sol.converged) {
      p.omega_prime = sol.plan.loop2.omega;
      p.omega0_prime = sol.plan.loop2.omega0;
      p.omega1_prime = sol.plan.loop2.omega1;
      p.gamma0_over_pi = sol.gamma_geometric_delta[0] / pi;
      p.gamma1_over_pi = sol.gamma_geometric_delta[1] / pi;
    }
    out.push_back(p);
  }
  return out;
}

CsvWriter fig1_csv(const std::vector<Fig1Point>& points) {
  CsvWriter csv({"ratio", "gamma_g_over_pi"});
  for (const auto& p : points)
    csv.add_row({format_number(p.ratio), format_number(p.gamma_over_pi)});
  return csv;
}

CsvWriter fig2_csv(const std::vector<Fig2Point>& points) {
  CsvWriter csv({"ratio", "gamma0_over_pi", "gamma1_over_pi"});
  for (const auto& p : points)
    csv.add_row({format_number(p.ratio), format_number(p.gamma0_over_pi),
                 format_number(p.gamma1_over_pi)});
  return csv;
}

CsvWriter fig3a_csv(const std::vector<Fig3Point>& points) {
  CsvWriter csv({"omega", "omega_prime", "omega0_prime", "omega1_prime", "status"});
  for (const auto& p : points) {
    if (p.ok)
      csv.add_row({format_number(p.omega), format_number(p.omega_prime),
                   format_number(p.omega0_prime), format_number(p.omega1_prime), "ok"});
    else
      csv.add_row({format_number(p.omega), "", "", "", "no_converge"});
  }
  return csv;
}

CsvWriter fig3b_csv(const std::vector<Fig3Point>& points) {
  CsvWriter csv({"omega", "gamma0_over_pi", "gamma1_over_pi", "status"});
  for (const auto& p : points) {
    if (p.ok)
      csv.add_row({format_number(p.omega), format_number(p.gamma0_over_pi),
                   format_number(p.gamma1_over_pi), "ok"});
    else
      csv.add_row({format_number(p.omega), "", "", "no_converge"});
  }
  return csv;
}

}  // namespace spincycle
