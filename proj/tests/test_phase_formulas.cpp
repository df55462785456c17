#include <doctest.h>

#include <cmath>
#include <random>

#include "spincycle/dynamics.h"
#include "spincycle/phase_formulas.h"

using namespace spincycle;

TEST_SUITE("cyclic angle") {

TEST_CASE("resonance puts the pair on the equator") {
  CHECK(cyclic_angle_chi(1.0, 2.0, 2.0).chi == doctest::Approx(pi / 2).epsilon(1e-15));
}

TEST_CASE("no transverse drive, below resonance: pole state") {
  CHECK(cyclic_angle_chi(0.0, 3.0, 1.0).chi == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("branch lands in (pi/2, pi) when driven above resonance") {
  const double chi = cyclic_angle_chi(1.0, 1.0, 2.0).chi;
  CHECK(chi == doctest::Approx(0.75 * pi).epsilon(1e-15));
  // and the returned state actually closes
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  CHECK(check_cyclicity(seg, SpinorState::at_polar(chi)).defect < 1e-6);
}

TEST_CASE("degenerate direction is rejected") {
  CHECK_THROWS_AS(cyclic_angle_chi(0.0, 2.0, 2.0), std::domain_error);
}

}  // TEST_SUITE

TEST_SUITE("one-cycle closed forms") {

TEST_CASE("dark point (3, 4, 6.25)") {
  const PhaseTriple p = single_qubit_phases(3.0, 4.0, 6.25);
  CHECK(p.geometric == doctest::Approx(-1.6 * pi).epsilon(1e-14));
  CHECK(p.dynamic == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.total == doctest::Approx(-1.6 * pi).epsilon(1e-14));
}

TEST_CASE("resonant point (1, 2, 2)") {
  const PhaseTriple p = single_qubit_phases(1.0, 2.0, 2.0);
  CHECK(p.geometric == doctest::Approx(-pi).epsilon(1e-14));
  CHECK(p.dynamic == doctest::Approx(-0.5 * pi).epsilon(1e-14));
  CHECK(p.total == doctest::Approx(-1.5 * pi).epsilon(1e-14));
}

TEST_CASE("pure longitudinal point (0, 3, 1)") {
  const PhaseTriple p = single_qubit_phases(0.0, 3.0, 1.0);
  CHECK(p.geometric == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.dynamic == doctest::Approx(-3.0 * pi).epsilon(1e-14));
  CHECK(p.total == doctest::Approx(-3.0 * pi).epsilon(1e-14));
}

TEST_CASE("sum identity holds algebraically") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> amp(0.1, 8.0);
  for (int k = 0; k < 200; ++k) {
    const PhaseTriple p = single_qubit_phases(amp(rng), amp(rng), amp(rng));
    CHECK(std::abs(p.total - p.geometric - p.dynamic) < 1e-12);
  }
}

TEST_CASE("oracle equivalence against the integrator") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> amp(0.3, 6.0);
  for (int k = 0; k < 30; ++k) {
    const double w0 = amp(rng), w1 = amp(rng), w = amp(rng);
    const RotatingFieldSegment seg(w0, w1, w);
    const PhaseTriple closed = single_qubit_phases(w0, w1, w);
    const PhaseTriple num = extract_phase_triple(
        seg, SpinorState::at_polar(seg.cyclic_angle()), recommended_steps(seg));
    CHECK(std::abs(closed.geometric - num.geometric) < 1e-6);
    CHECK(std::abs(closed.dynamic - num.dynamic) < 1e-6);
    CHECK(std::abs(closed.total - num.total) < 1e-6);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(single_qubit_phases(1.0, 1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(single_qubit_phases(0.0, 2.0, 2.0), std::domain_error);
}

}  // TEST_SUITE

TEST_SUITE("conditional closed forms") {

TEST_CASE("coupling-free limit reduces to the single-qubit forms") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> amp(0.2, 5.0);
  for (int k = 0; k < 40; ++k) {
    const double w0 = amp(rng), w1 = amp(rng), w = amp(rng);
    for (int delta : {0, 1}) {
      const PhaseTriple a = conditional_phases({w0, w1, w, 0.0, delta});
      const PhaseTriple b = single_qubit_phases(w0, w1, w);
      CHECK(a.total == b.total);
      CHECK(a.geometric == b.geometric);
      CHECK(a.dynamic == b.dynamic);
    }
  }
}

TEST_CASE("worked point omega0=sqrt(3), omega1=2, J=1, omega=4") {
  const double w0 = std::sqrt(3.0);
  const PhaseTriple up = conditional_phases({w0, 2.0, 4.0, 1.0, 1});
  CHECK(up.geometric == doctest::Approx(-1.5 * pi).epsilon(1e-14));
  CHECK(up.dynamic == doctest::Approx(0.0).epsilon(1e-14));
  const PhaseTriple down = conditional_phases({w0, 2.0, 4.0, 1.0, 0});
  CHECK(down.geometric ==
        doctest::Approx(-pi * (1.0 + std::sqrt(3.0) / 2.0)).epsilon(1e-14));
  CHECK(down.dynamic == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("integration oracle with the shifted longitudinal frequency") {
  const double w0 = std::sqrt(3.0);
  for (int delta : {0, 1}) {
    const RotatingFieldSegment eff =
        RotatingFieldSegment(w0, 2.0, 4.0).conditional(1.0, delta);
    const PhaseTriple num = extract_phase_triple(
        eff, SpinorState::at_polar(eff.cyclic_angle()), recommended_steps(eff));
    const PhaseTriple closed = conditional_phases({w0, 2.0, 4.0, 1.0, delta});
    CHECK(std::abs(num.geometric - closed.geometric) < 1e-6);
    CHECK(std::abs(num.dynamic - closed.dynamic) < 1e-6);
  }
}

}  // TEST_SUITE

TEST_SUITE("dark-state conditions") {

TEST_CASE("single-qubit condition and its geometric phase") {
  CHECK(dark_state_frequency_single(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(dark_state_frequency_single(3.0, 4.0) == doctest::Approx(6.25).epsilon(1e-15));
  const PhaseTriple p = single_qubit_phases(1.0, 1.0, 2.0);
  CHECK(p.dynamic == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.geometric ==
        doctest::Approx(-pi * (1.0 + 1.0 / std::sqrt(2.0))).epsilon(1e-14));
  CHECK(single_qubit_phases(3.0, 4.0, 6.25).geometric ==
        doctest::Approx(-1.6 * pi).epsilon(1e-14));
}

TEST_CASE("asymptotics of the dark geometric phase") {
  // gamma_g -> -pi for omega1 >> omega0 and -> -2*pi for omega1 << omega0.
  auto dark_gamma = [](double ratio) {
    const double w0 = 1.0, w1 = ratio;
    return single_qubit_phases(w0, w1, dark_state_frequency_single(w0, w1)).geometric;
  };
  CHECK(std::abs(dark_gamma(1e7) + pi) < 1e-6);
  CHECK(std::abs(dark_gamma(1e-7) + 2.0 * pi) < 1e-6);
}

TEST_CASE("omega1 = 0 has no dark frequency") {
  CHECK_THROWS_AS(dark_state_frequency_single(1.0, 0.0), std::domain_error);
}

TEST_CASE("two-qubit condition") {
  const auto cond = dark_state_condition_two_qubit(2.0, 1.0);
  CHECK(cond.omega == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(cond.omega0 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  for (int delta : {0, 1})
    CHECK(conditional_phases({cond.omega0, 2.0, cond.omega, 1.0, delta}).dynamic ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("two-qubit condition boundary and domain") {
  CHECK(dark_state_condition_two_qubit(1.0, 1.0).omega0 == 0.0);  // degenerate drive
  CHECK_THROWS_AS(dark_state_condition_two_qubit(0.5, 1.0), std::domain_error);
}

TEST_CASE("instantaneous energy vanishes along the whole dark cycle") {
  const double w = dark_state_frequency_single(1.0, 1.0);
  const RotatingFieldSegment seg(1.0, 1.0, w);
  const auto traj =
      propagate_spinor(seg, SpinorState::at_polar(seg.cyclic_angle()), 4096);
  const double dt = seg.duration / 4096;
  for (size_t i = 0; i < traj.size(); i += 32) {
    const double energy = 0.5 * seg.field(i * dt).dot(traj[i].bloch());
    CHECK(std::abs(energy) < 1e-6);
  }
}

}  // TEST_SUITE

TEST_SUITE("angle helpers") {

TEST_CASE("principal branch") {
  CHECK(principal_angle(0.4 * pi) == doctest::Approx(0.4 * pi));
  CHECK(principal_angle(-1.6 * pi) == doctest::Approx(0.4 * pi));
  CHECK(principal_angle(3.0 * pi) == doctest::Approx(pi));
  CHECK(angle_distance_mod_2pi(-1.6 * pi, 0.4 * pi) < 1e-15);
}

}  // TEST_SUITE
