#include "spincycle/loop_solvers.h"

#include <cmath>
#include <limits>

#include "spincycle/dynamics.h"

namespace spincycle {

namespace {

double omega_big(double w0, double detuning) { return std::hypot(w0, detuning); }

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
}

}  // namespace

NewtonResult newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const std::function<bool(const Eigen::VectorXd&)>& in_domain,
    Eigen::VectorXd x0, const NewtonOptions& opts) {
  NewtonResult res;
  res.x = std::move(x0);
  if (!in_domain(res.x)) {
    res.converged = false;
    res.residual_norm = std::numeric_limits<double>::infinity();
    return res;
  }
  Eigen::VectorXd fx = f(res.x);
  res.residual_norm = fx.norm();
  const int n = static_cast<int>(res.x.size());

  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    if (res.residual_norm < opts.tolerance) {
      res.converged = true;
      return res;
    }
    // Central-difference Jacobian.
    Eigen::MatrixXd jac(fx.size(), n);
    for (int j = 0; j < n; ++j) {
      const double h = opts.fd_step * std::max(1.0, std::abs(res.x(j)));
      Eigen::VectorXd xp = res.x, xm = res.x;
      xp(j) += h;
      xm(j) -= h;
      if (!in_domain(xp) || !in_domain(xm)) {
        res.converged = false;
        return res;
      }
      jac.col(j) = (f(xp) - f(xm)) / (2.0 * h);
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(-fx);
    if (!step.allFinite()) {
      res.converged = false;
      return res;
    }
    // Backtracking: accept only residual decrease inside the domain.
    double lambda = 1.0;
    bool moved = false;
    while (lambda > 1e-14) {
      const Eigen::VectorXd trial = res.x + lambda * step;
      if (in_domain(trial)) {
        const Eigen::VectorXd ft = f(trial);
        if (ft.norm() < res.residual_norm * (1.0 - 1e-4 * lambda)) {
          res.x = trial;
          fx = ft;
          res.residual_norm = ft.norm();
          moved = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!moved) {
      res.converged = res.residual_norm < opts.tolerance;
      return res;
    }
  }
  res.converged = res.residual_norm < opts.tolerance;
  return res;
}

// ---------------------------------------------------------------------------
// Single-qubit two-loop scheme
// ---------------------------------------------------------------------------

std::pair<double, double> single_qubit_residuals(double omega, double omega0,
                                                 double omega0p, double omega1,
                                                 double omega1p, double Gamma) {
  require_positive(omega, "drive rotation rate");
  const double big1 = omega_big(omega0, omega1 - omega);
  const double big2 = omega_big(omega0p, omega1p + omega);
  if (big1 == 0.0 || big2 == 0.0)
    throw std::domain_error("degenerate rotating-frame field in one of the loops");
  const double r1 = (omega1 - omega) / big1 + (omega1p + omega) / big2 - (2.0 - Gamma);
  const double r2 = (omega0 * omega0 + omega1 * omega1 - omega * omega1) / (omega * big1) -
                    (omega0p * omega0p + omega1p * omega1p + omega * omega1p) / (omega * big2);
  return {r1, r2};
}

namespace {

MultiLoopPlan make_single_qubit_plan(double omega, double omega0, double omega0p,
                                     double omega1, double omega1p) {
  MultiLoopPlan plan;
  plan.kind = PlanKind::SingleQubit;
  plan.loop1 = RotatingFieldSegment(omega0, omega1, omega);
  const double alpha = std::atan2(omega0, omega1 - omega);
  const double alphap = std::atan2(omega0p, omega1p + omega);
  plan.eta = alpha - alphap;  // aligns the loop-2 cyclic pair with loop 1's
  plan.loop2 = RotatingFieldSegment(omega0p, omega1p, omega, true, plan.eta);
  return plan;
}

struct SingleQubitVars {
  double omega, omega0, omega0p;
};

SingleQubitVars unpack_single(SingleQubitPin pin, double pin_value,
                              const Eigen::VectorXd& x) {
  switch (pin) {
    case SingleQubitPin::Omega: return {pin_value, x(0), x(1)};
    case SingleQubitPin::Omega0: return {x(0), pin_value, x(1)};
    default: return {x(0), x(1), pin_value};
  }
}

}  // namespace

SolverSolution solve_single_qubit_two_loop(
    double Gamma, double omega1, double omega1p, SingleQubitPin pin,
    double pin_value, std::optional<std::pair<double, double>> seed,
    const NewtonOptions& opts) {
  if (!(Gamma > 0.0 && Gamma < 2.0))
    throw std::domain_error("target phase factor Gamma must lie in (0, 2)");
  require_positive(omega1, "omega1");
  require_positive(omega1p, "omega1'");
  require_positive(pin_value, "pinned value");

  auto residual = [&](const Eigen::VectorXd& x) {
    const SingleQubitVars v = unpack_single(pin, pin_value, x);
    const auto [r1, r2] =
        single_qubit_residuals(v.omega, v.omega0, v.omega0p, omega1, omega1p, Gamma);
    return (Eigen::VectorXd(2) << r1, r2).finished();
  };
  auto in_domain = [&](const Eigen::VectorXd& x) {
    const SingleQubitVars v = unpack_single(pin, pin_value, x);
    return v.omega > 1e-12 && v.omega0 >= 0.0 && v.omega0p >= 0.0;
  };

  Eigen::VectorXd x0(2);
  if (seed) {
    x0 << seed->first, seed->second;
  } else {
    // Coarse scan of the physical octant.
    double best = std::numeric_limits<double>::infinity();
    const int grid = 64;
    for (int i = 1; i < grid; ++i) {
      for (int j = 1; j < grid; ++j) {
        Eigen::VectorXd trial(2);
        switch (pin) {
          case SingleQubitPin::Omega:
            trial << 3.0 * omega1 * i / grid, 3.0 * omega1 * j / grid;
            break;
          case SingleQubitPin::Omega0:
            trial << 0.99 * omega1 * i / grid, 3.0 * omega1 * j / grid;
            break;
          default:
            trial << 0.99 * omega1 * i / grid, 3.0 * omega1 * j / grid;
            break;
        }
        if (!in_domain(trial)) continue;
        const double norm = residual(trial).norm();
        if (norm < best) {
          best = norm;
          x0 = trial;
        }
      }
    }
  }

  const NewtonResult nr = newton_solve(residual, in_domain, x0, opts);
  const SingleQubitVars v = unpack_single(pin, pin_value, nr.x);

  SolverSolution sol;
  sol.converged = nr.converged && v.omega > 0.0 && v.omega0 > 0.0 && v.omega0p > 0.0;
  sol.iterations = nr.iterations;
  sol.pinned_value = pin_value;
  sol.plan = make_single_qubit_plan(v.omega, v.omega0, v.omega0p, omega1, omega1p);
  const auto [r1, r2] =
      single_qubit_residuals(v.omega, v.omega0, v.omega0p, omega1, omega1p, Gamma);
  sol.residuals = {std::abs(r1), std::abs(r2)};
  const double c1 = (omega1 - v.omega) / omega_big(v.omega0, omega1 - v.omega);
  const double c2 = (omega1p + v.omega) / omega_big(v.omega0p, omega1p + v.omega);
  sol.gamma_geometric = -pi * (2.0 - c1 - c2);
  return sol;
}

// ---------------------------------------------------------------------------
// Two-qubit two-loop scheme
// ---------------------------------------------------------------------------

double eta_angle(double omega, double omega0, double omega1, double omegap,
                 double omega0p, double omega1p, double coupling, double tol) {
  require_positive(omega, "loop-1 rotation rate");
  require_positive(omegap, "loop-2 rotation rate");
  double eta[2];
  for (int delta = 0; delta < 2; ++delta) {
    const double shift = (2 * delta - 1) * coupling;
    eta[delta] = std::atan2(omega0, omega1 + shift - omega) -
                 std::atan2(omega0p, omega1p + shift + omegap);
  }
  if (std::abs(eta[0] - eta[1]) > tol)
    throw ConvergenceError("control rotation angle depends on the control state (|d eta| = " +
                           std::to_string(std::abs(eta[0] - eta[1])) + ")");
  return eta[0];
}

std::array<double, 3> two_qubit_residuals(double omega, double omega0,
                                          double omega1, double omegap,
                                          double omega0p, double omega1p,
                                          double coupling) {
  require_positive(omega, "loop-1 rotation rate");
  require_positive(omegap, "loop-2 rotation rate");
  require_positive(omega0, "loop-1 transverse amplitude");
  require_positive(omega0p, "loop-2 transverse amplitude");
  require_positive(omega1, "loop-1 longitudinal frequency");
  require_positive(omega1p, "loop-2 longitudinal frequency");

  // Control-state independence of the inter-loop rotation, denominators
  // cleared: equality of tan(alpha^0 - alpha^1) between the loops.
  const double lhs = (omega1 - omega) * (omega1 - omega) - coupling * coupling +
                     omega0 * omega0;
  const double rhs = (omega1p + omegap) * (omega1p + omegap) - coupling * coupling +
                     omega0p * omega0p;
  std::array<double, 3> r;
  r[0] = omega0 * rhs - omega0p * lhs;

  // Zero total conditional dynamic phase, one equation per control state.
  for (int delta = 0; delta < 2; ++delta) {
    const double w1d = omega1 + (2 * delta - 1) * coupling;
    const double w1pd = omega1p + (2 * delta - 1) * coupling;
    const double big1 = omega_big(omega0, w1d - omega);
    const double big2 = omega_big(omega0p, w1pd + omegap);
    if (big1 == 0.0 || big2 == 0.0)
      throw std::domain_error("degenerate rotating-frame field in one of the loops");
    r[delta + 1] = (omega0 * omega0 + w1d * (w1d - omega)) / (omega * big1) -
                   (omega0p * omega0p + w1pd * (w1pd + omegap)) / (omegap * big2);
  }
  return r;
}

namespace {

MultiLoopPlan make_two_qubit_plan(double omega, double omega0, double omega1,
                                  double omegap, double omega0p, double omega1p,
                                  double coupling) {
  MultiLoopPlan plan;
  plan.kind = PlanKind::TwoQubit;
  plan.coupling = coupling;
  plan.loop1 = RotatingFieldSegment(omega0, omega1, omega);
  plan.eta = eta_angle(omega, omega0, omega1, omegap, omega0p, omega1p, coupling, 1e-6);
  plan.loop2 = RotatingFieldSegment(omega0p, omega1p, omegap, true, plan.eta);
  return plan;
}

double gamma_factor_delta(double omega, double omega0, double omega1,
                          double omegap, double omega0p, double omega1p,
                          double coupling, int delta) {
  const double w1d = omega1 + (2 * delta - 1) * coupling;
  const double w1pd = omega1p + (2 * delta - 1) * coupling;
  return 2.0 - (w1d - omega) / omega_big(omega0, w1d - omega) -
         (w1pd + omegap) / omega_big(omega0p, w1pd + omegap);
}

}  // namespace

std::vector<SolverSolution> solve_two_qubit_two_loop(
    double omega0, double omega1, double coupling,
    const std::vector<double>& omega_grid, const NewtonOptions& opts) {
  require_positive(omega0, "omega0");
  require_positive(omega1, "omega1");
  require_positive(coupling, "coupling");
  if (!(omega1 > coupling))
    throw std::domain_error("conditional drive needs omega1 > J");

  std::vector<SolverSolution> out;
  out.reserve(omega_grid.size());
  std::optional<Eigen::VectorXd> carry;  // continuation seed

  for (const double omega : omega_grid) {
    require_positive(omega, "grid omega");
    auto residual = [&](const Eigen::VectorXd& x) {
      const auto r = two_qubit_residuals(omega, omega0, omega1, x(0), x(1), x(2), coupling);
      return (Eigen::VectorXd(3) << r[0], r[1], r[2]).finished();
    };
    auto in_domain = [&](const Eigen::VectorXd& x) {
      return x(0) > 1e-9 && x(1) > 1e-9 && x(2) > 1e-9;
    };
    auto coarse_seed = [&]() -> std::optional<Eigen::VectorXd> {
      double best = std::numeric_limits<double>::infinity();
      Eigen::VectorXd found(3);
      const double top = 2.0 * std::max({omega0, omega1, omega});
      const int grid = 18;
      for (int i = 1; i <= grid; ++i)
        for (int j = 1; j <= grid; ++j)
          for (int k = 1; k <= grid; ++k) {
            Eigen::VectorXd trial(3);
            trial << top * i / grid, top * j / grid, top * k / grid;
            if (!in_domain(trial)) continue;
            double norm;
            try {
              norm = residual(trial).norm();
            } catch (const std::domain_error&) {
              continue;
            }
            if (norm < best) {
              best = norm;
              found = trial;
            }
          }
      if (!std::isfinite(best)) return std::nullopt;
      return found;
    };

    Eigen::VectorXd x0(3);
    bool have_seed = false;
    if (carry && in_domain(*carry)) {
      x0 = *carry;
      have_seed = true;
    } else if (auto fresh = coarse_seed()) {
      x0 = *fresh;
      have_seed = true;
    }

    SolverSolution sol;
    sol.pinned_value = omega;
    if (have_seed) {
      NewtonResult nr = newton_solve(residual, in_domain, x0, opts);
      if (!nr.converged && carry) {
        // Continuation seed failed; retry from a fresh coarse search.
        carry.reset();
        if (auto fresh = coarse_seed()) nr = newton_solve(residual, in_domain, *fresh, opts);
      }
      sol.iterations = nr.iterations;
      sol.converged = nr.converged && nr.x(0) > 0.0 && nr.x(1) > 0.0 && nr.x(2) > 0.0;
      if (sol.converged) {
        carry = nr.x;
        try {
          sol.plan = make_two_qubit_plan(omega, omega0, omega1, nr.x(0), nr.x(1),
                                         nr.x(2), coupling);
        } catch (const ConvergenceError&) {
          sol.converged = false;
        }
        const auto r = two_qubit_residuals(omega, omega0, omega1, nr.x(0), nr.x(1),
                                           nr.x(2), coupling);
        sol.residuals = {std::abs(r[0]), std::abs(r[1]), std::abs(r[2])};
        for (int delta = 0; delta < 2; ++delta)
          sol.gamma_geometric_delta[delta] =
              -pi * gamma_factor_delta(omega, omega0, omega1, nr.x(0), nr.x(1),
                                       nr.x(2), coupling, delta);
        sol.nontrivial = angle_distance_mod_2pi(sol.gamma_geometric_delta[0],
                                                sol.gamma_geometric_delta[1]) > 1e-9;
      }
    }
    out.push_back(std::move(sol));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integration cross-check
// ---------------------------------------------------------------------------

TwoLoopIntegration integrate_plan(const MultiLoopPlan& plan, int delta, int steps) {
  RotatingFieldSegment loop1 = plan.loop1;
  RotatingFieldSegment loop2 = plan.loop2;
  if (plan.kind == PlanKind::TwoQubit) {
    loop1 = loop1.conditional(plan.coupling, delta);
    loop2 = loop2.conditional(plan.coupling, delta);
  }
  const int n1 = steps > 0 ? steps : recommended_steps(loop1);
  const int n2 = steps > 0 ? steps : recommended_steps(loop2);

  // Oversized cyclicity tolerance: closure failures are reported as data,
  // not raised.
  const double report_tol = 2.0;
  const SpinorState start = SpinorState::at_polar(loop1.cyclic_angle());
  const ExtractionResult first = extract_phases(loop1, start, n1, report_tol);
  // Loop 1 returns the cyclic state up to a phase, so the same state enters
  // loop 2; its closure there is the property being checked.
  const ExtractionResult second = extract_phases(loop2, start, n2, report_tol);

  TwoLoopIntegration res;
  res.total_dynamic = first.phases.dynamic + second.phases.dynamic;
  res.total_geometric = first.phases.geometric + second.phases.geometric;
  res.loop1_defect = first.cyclicity_defect;
  res.loop2_closure_defect = second.cyclicity_defect;
  return res;
}

}  // namespace spincycle
