#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spincycle/field.h"
#include "spincycle/phases.h"

namespace spincycle {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Damped Newton with a central-difference Jacobian.
struct NewtonOptions {
  int max_iterations = 100;
  double tolerance = 1e-12;  // on the residual norm
  double fd_step = 1e-7;
};

struct NewtonResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

NewtonResult newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const std::function<bool(const Eigen::VectorXd&)>& in_domain,
    Eigen::VectorXd x0, const NewtonOptions& opts = {});

enum class PlanKind { SingleQubit, TwoQubit };

// Two consecutive loops whose dynamic phases cancel while the geometric
// phases add.  loop2 carries reversed = true and the axis tilt that maps its
// cyclic pair onto loop1's.
struct MultiLoopPlan {
  RotatingFieldSegment loop1;
  RotatingFieldSegment loop2;
  PlanKind kind = PlanKind::SingleQubit;
  double coupling = 0.0;  // two-qubit plans only
  double eta = 0.0;       // control rotation angle; equals loop2.axis_tilt
};

struct SolverSolution {
  MultiLoopPlan plan;
  std::vector<double> residuals;  // absolute values, one per equation
  double gamma_geometric = 0.0;   // achieved -Gamma*pi (single-qubit)
  std::array<double, 2> gamma_geometric_delta{0.0, 0.0};  // two-qubit, per control state
  bool nontrivial = false;  // two-qubit: gamma^0 != gamma^1 mod 2*pi
  int iterations = 0;
  bool converged = false;
  double pinned_value = 0.0;  // sweep abscissa (pinned variable / grid omega)
};

// Residuals of the single-qubit two-loop conditions for target geometric
// phase -Gamma*pi with zero total dynamic phase:
//   r1 = (w1-w)/Omega + (w1p+w)/Omega' - (2 - Gamma)
//   r2 = (w0^2+w1^2-w*w1)/(w*Omega) - (w0p^2+w1p^2+w*w1p)/(w*Omega')
// with Omega = sqrt(w0^2+(w1-w)^2), Omega' = sqrt(w0p^2+(w1p+w)^2).
std::pair<double, double> single_qubit_residuals(double omega, double omega0,
                                                 double omega0p, double omega1,
                                                 double omega1p, double Gamma);

enum class SingleQubitPin { Omega, Omega0, Omega0Prime };

// Solves the two residual equations over the two variables of
// {omega, omega0, omega0'} left free by the pin.  Throws std::domain_error
// for Gamma outside (0, 2); reports non-convergence in the result.
SolverSolution solve_single_qubit_two_loop(
    double Gamma, double omega1, double omega1p, SingleQubitPin pin,
    double pin_value,
    std::optional<std::pair<double, double>> seed = std::nullopt,
    const NewtonOptions& opts = {});

// Control-rotation angle between the loops,
//   eta = atan2(w0, w1^d - w) - atan2(w0p, w1p^d + wp),
// verified equal for delta = 0 and delta = 1.  Throws ConvergenceError when
// the two control states disagree beyond tol.
double eta_angle(double omega, double omega0, double omega1, double omegap,
                 double omega0p, double omega1p, double coupling,
                 double tol = 1e-9);

// Residuals of the two-qubit two-loop conditions:
//   r0: delta-independence of eta, cleared of denominators:
//       w0 [(w1p+wp)^2 - J^2 + w0p^2] - w0p [(w1-w)^2 - J^2 + w0^2]
//   r1, r2: zero total conditional dynamic phase for delta = 0, 1.
std::array<double, 3> two_qubit_residuals(double omega, double omega0,
                                          double omega1, double omegap,
                                          double omega0p, double omega1p,
                                          double coupling);

// Sweeps omega over the grid, solving {r0, r1, r2} for (omega', omega0',
// omega1') by Newton with continuation (each solution seeds the next grid
// point; the first point is seeded from a coarse search over the physical
// octant).  Failures are reported per point and the sweep continues.
std::vector<SolverSolution> solve_two_qubit_two_loop(
    double omega0, double omega1, double coupling,
    const std::vector<double>& omega_grid, const NewtonOptions& opts = {});

// Integration cross-check of a plan: total dynamic and geometric phase over
// both loops and the loop-2 closure defect, from the spinor dynamics.  For
// two-qubit plans delta selects the control state; pass steps = 0 to size the
// integrator from the drive.
struct TwoLoopIntegration {
  double total_dynamic = 0.0;
  double total_geometric = 0.0;
  double loop1_defect = 0.0;
  double loop2_closure_defect = 0.0;
};

TwoLoopIntegration integrate_plan(const MultiLoopPlan& plan, int delta = 0,
                                  int steps = 0);

}  // namespace spincycle
