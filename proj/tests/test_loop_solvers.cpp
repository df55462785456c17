#include <doctest.h>

#include <cmath>
#include <random>

#include "spincycle/dynamics.h"
#include "spincycle/loop_solvers.h"

using namespace spincycle;

TEST_SUITE("single-qubit two-loop") {

TEST_CASE("r1 vanishes by construction when Gamma matches the cosine sum") {
  const double w = 0.4, w0 = 0.7, w0p = 1.1, w1 = 1.0, w1p = 1.0;
  const double c1 = (w1 - w) / std::hypot(w0, w1 - w);
  const double c2 = (w1p + w) / std::hypot(w0p, w1p + w);
  const auto [r1, r2] = single_qubit_residuals(w, w0, w0p, w1, w1p, 2.0 - c1 - c2);
  CHECK(std::abs(r1) < 1e-14);
  (void)r2;
}

TEST_CASE("even-split locus alpha = alpha' pins r2 at -7/6") {
  // With omega1' = omega1 = 1 and both loop cosines equal to 3/4 (the locus
  // omega = 1 - (3/sqrt(7)) omega0, omega0' = (1 + omega) sqrt(7)/3), the
  // geometric-sum residual vanishes for Gamma = 1/2 while the
  // dynamic-cancellation residual is exactly -7/6.  Kept as a regression
  // guard on the sign conventions of both residuals.
  for (const double w0 : {0.1, 0.3, 0.6}) {
    const double w = 1.0 - (3.0 / std::sqrt(7.0)) * w0;
    const double w0p = (1.0 + w) * std::sqrt(7.0) / 3.0;
    const auto [r1, r2] = single_qubit_residuals(w, w0, w0p, 1.0, 1.0, 0.5);
    CHECK(std::abs(r1) < 1e-12);
    CHECK(r2 == doctest::Approx(-7.0 / 6.0).epsilon(1e-12));
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(single_qubit_residuals(-1.0, 0.5, 0.5, 1.0, 1.0, 0.5),
                  std::domain_error);
  CHECK_THROWS_AS(single_qubit_residuals(1.0, 0.0, 0.5, 1.0, 1.0, 0.5),
                  std::domain_error);  // Omega = 0 at resonance
}

TEST_CASE("solver: residuals, integration and closure at a feasible pin") {
  const SolverSolution sol =
      solve_single_qubit_two_loop(0.5, 1.0, 1.0, SingleQubitPin::Omega0, 0.8);
  REQUIRE(sol.converged);
  CHECK(sol.residuals[0] < 1e-10);
  CHECK(sol.residuals[1] < 1e-10);
  CHECK(sol.gamma_geometric == doctest::Approx(-0.5 * pi).epsilon(1e-9));
  CHECK(sol.plan.loop2.reversed);
  CHECK(sol.plan.loop2.omega == doctest::Approx(sol.plan.loop1.omega));

  // The tilt maps the loop-2 cyclic pair onto loop 1's.
  CHECK(sol.plan.loop2.cyclic_angle() ==
        doctest::Approx(sol.plan.loop1.cyclic_angle()).epsilon(1e-12));

  const TwoLoopIntegration check = integrate_plan(sol.plan);
  CHECK(std::abs(check.total_dynamic) < 1e-6);
  CHECK(std::abs(check.total_geometric + 0.5 * pi) < 1e-5);
  CHECK(check.loop1_defect < 1e-6);
  CHECK(check.loop2_closure_defect < 1e-6);
}

TEST_CASE("substituting a solution back gives tiny residuals") {
  const SolverSolution sol =
      solve_single_qubit_two_loop(0.5, 1.0, 1.0, SingleQubitPin::Omega0, 0.7);
  REQUIRE(sol.converged);
  const auto [r1, r2] = single_qubit_residuals(
      sol.plan.loop1.omega, sol.plan.loop1.omega0, sol.plan.loop2.omega0, 1.0, 1.0,
      0.5);
  CHECK(std::abs(r1) < 1e-10);
  CHECK(std::abs(r2) < 1e-10);
}

TEST_CASE("continuation across the feasible pin range is smooth") {
  std::optional<std::pair<double, double>> seed;
  double prev_omega = 0.0;
  bool first = true;
  for (double pin = 0.60; pin <= 0.801; pin += 0.02) {
    const SolverSolution sol = solve_single_qubit_two_loop(
        0.5, 1.0, 1.0, SingleQubitPin::Omega0, pin, seed);
    REQUIRE(sol.converged);
    seed = {{sol.plan.loop1.omega, sol.plan.loop2.omega0}};
    if (!first) {
      CHECK(std::abs(sol.plan.loop1.omega - prev_omega) < 0.2);  // no branch jumps
      CHECK(sol.plan.loop1.omega < prev_omega);                  // monotone along the branch
    }
    prev_omega = sol.plan.loop1.omega;
    first = false;
  }
}

TEST_CASE("pins without a physical root report non-convergence") {
  const SolverSolution sol =
      solve_single_qubit_two_loop(0.5, 1.0, 1.0, SingleQubitPin::Omega0, 0.2);
  CHECK_FALSE(sol.converged);
}

TEST_CASE("trivial or out-of-range targets are domain errors") {
  CHECK_THROWS_AS(
      solve_single_qubit_two_loop(0.0, 1.0, 1.0, SingleQubitPin::Omega0, 0.5),
      std::domain_error);
  CHECK_THROWS_AS(
      solve_single_qubit_two_loop(2.0, 1.0, 1.0, SingleQubitPin::Omega0, 0.5),
      std::domain_error);
}

}  // TEST_SUITE

TEST_SUITE("two-qubit two-loop") {

TEST_CASE("solved sweep point satisfies residuals and cancels both dynamic phases") {
  const auto sols = solve_two_qubit_two_loop(5.0, 5.0, 1.0, {4.0});
  REQUIRE(sols.size() == 1);
  REQUIRE(sols[0].converged);
  for (const double r : sols[0].residuals) CHECK(r < 1e-9);
  for (int delta : {0, 1}) {
    const TwoLoopIntegration check = integrate_plan(sols[0].plan, delta);
    CHECK(std::abs(check.total_dynamic) < 1e-6);
    CHECK(check.loop1_defect < 1e-6);
    CHECK(check.loop2_closure_defect < 1e-6);
  }
  CHECK(sols[0].nontrivial);
}

TEST_CASE("integrated geometric phases match the emitted Gamma factors") {
  const auto sols = solve_two_qubit_two_loop(5.0, 5.0, 1.0, {3.0});
  REQUIRE(sols[0].converged);
  for (int delta : {0, 1}) {
    const TwoLoopIntegration check = integrate_plan(sols[0].plan, delta);
    CHECK(std::abs(check.total_geometric - sols[0].gamma_geometric_delta[delta]) <
          1e-5);
  }
}

TEST_CASE("unphysical sign conventions are rejected") {
  // Flipping the loop-2 longitudinal frequency by hand is not how reversal
  // is encoded; the domain check fires.
  CHECK_THROWS_AS(two_qubit_residuals(1.0, 1.0, 3.0, 1.0, 1.0, -3.0, 1.0),
                  std::domain_error);
}

TEST_CASE("eta angle is control-state independent exactly on solutions") {
  const auto sols = solve_two_qubit_two_loop(5.0, 5.0, 1.0, {2.5});
  REQUIRE(sols[0].converged);
  const auto& p = sols[0].plan;
  const double eta =
      eta_angle(p.loop1.omega, p.loop1.omega0, p.loop1.omega1, p.loop2.omega,
                p.loop2.omega0, p.loop2.omega1, 1.0);
  CHECK(eta == doctest::Approx(p.eta).epsilon(1e-12));
}

TEST_CASE("eta angle is trivially state-independent without coupling") {
  CHECK_NOTHROW(eta_angle(1.0, 0.8, 2.0, 1.3, 0.9, 1.7, 0.0));
}

TEST_CASE("eta angle raises on generic non-solution parameters") {
  CHECK_THROWS_AS(eta_angle(1.0, 0.8, 2.0, 1.3, 0.9, 1.7, 0.6), ConvergenceError);
}

TEST_CASE("conditional separation scales away as the coupling vanishes") {
  auto separation = [](double coupling) {
    const auto sols = solve_two_qubit_two_loop(5.0, 5.0, coupling, {3.0});
    REQUIRE(sols[0].converged);
    return angle_distance_mod_2pi(sols[0].gamma_geometric_delta[0],
                                  sols[0].gamma_geometric_delta[1]);
  };
  const double wide = separation(0.5);
  const double narrow = separation(0.05);
  CHECK(narrow < 0.2 * wide);

  const auto tiny = solve_two_qubit_two_loop(5.0, 5.0, 1e-9, {3.0});
  REQUIRE(tiny[0].converged);
  CHECK_FALSE(tiny[0].nontrivial);
}

TEST_CASE("failed grid points are reported and the sweep continues") {
  const auto sols = solve_two_qubit_two_loop(5.0, 5.0, 1.0, {4.0, 7.5, 5.0});
  REQUIRE(sols.size() == 3);
  CHECK(sols[0].converged);
  CHECK_FALSE(sols[1].converged);  // branch leaves the physical octant
  CHECK(sols[2].converged);
}

TEST_CASE("sweep is deterministic") {
  const std::vector<double> grid{2.0, 2.5, 3.0};
  const auto a = solve_two_qubit_two_loop(5.0, 5.0, 1.0, grid);
  const auto b = solve_two_qubit_two_loop(5.0, 5.0, 1.0, grid);
  for (size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(a[i].converged == b[i].converged);
    CHECK(a[i].plan.loop2.omega == b[i].plan.loop2.omega);
    CHECK(a[i].plan.loop2.omega0 == b[i].plan.loop2.omega0);
    CHECK(a[i].plan.loop2.omega1 == b[i].plan.loop2.omega1);
  }
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(solve_two_qubit_two_loop(5.0, 0.5, 1.0, {2.0}), std::domain_error);
  CHECK_THROWS_AS(solve_two_qubit_two_loop(5.0, 5.0, -1.0, {2.0}), std::domain_error);
}

}  // TEST_SUITE

TEST_SUITE("newton") {

TEST_CASE("solves a smooth 2x2 system") {
  auto f = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(2);
    r << x(0) * x(0) + x(1) - 3.0, x(0) - x(1) * x(1) + 1.0;
    return r;
  };
  const NewtonResult res = newton_solve(
      f, [](const Eigen::VectorXd&) { return true; },
      (Eigen::VectorXd(2) << 1.0, 1.0).finished());
  CHECK(res.converged);
  CHECK(res.residual_norm < 1e-12);
}

TEST_CASE("respects the domain guard") {
  auto f = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(1);
    r << std::log(x(0)) - 1.0;
    return r;
  };
  const NewtonResult res = newton_solve(
      f, [](const Eigen::VectorXd& x) { return x(0) > 0.0; },
      (Eigen::VectorXd(1) << 0.5).finished());
  CHECK(res.converged);
  CHECK(res.x(0) == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
}

}  // TEST_SUITE
