#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spincycle/dynamics.h"
#include "spincycle/phase_formulas.h"

using namespace spincycle;

namespace {
SpinorState cyclic_plus(const RotatingFieldSegment& seg) {
  return SpinorState::at_polar(seg.cyclic_angle());
}
}  // namespace

TEST_SUITE("spinor propagation") {

TEST_CASE("diagonal drive leaves |0> up to the phase exp(-i w1 t / 2)") {
  const RotatingFieldSegment seg(0.0, 2.0, 1.0);
  const auto traj = propagate_spinor(seg, SpinorState(1.0, 0.0), 256);
  const double dt = seg.duration / 256;
  for (size_t i = 0; i < traj.size(); i += 16) {
    const std::complex<double> expected = std::exp(std::complex<double>(0.0, -1.0 * i * dt));
    CHECK(std::abs(traj[i].amp0 - expected) < 1e-10);
    CHECK(std::abs(traj[i].amp1) < 1e-12);
  }
}

TEST_CASE("cyclic state returns to itself up to a phase after one period") {
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  const auto traj = propagate_spinor(seg, cyclic_plus(seg), 4096);
  const std::complex<double> ovl = cyclic_plus(seg).overlap(traj.back());
  CHECK(1.0 - std::abs(ovl) < 1e-9);
}

TEST_CASE("overlap phase at omega0=3, omega1=4, omega=6.25 is 0.4*pi mod 2*pi") {
  const RotatingFieldSegment seg(3.0, 4.0, 6.25);
  const ExtractionResult res = extract_phases(seg, cyclic_plus(seg));
  CHECK(std::abs(res.overlap_phase - 0.4 * pi) < 1e-6);
  CHECK(angle_distance_mod_2pi(res.phases.total, -1.6 * pi) < 1e-6);
}

TEST_CASE("norm is conserved to 1e-9 along the trajectory") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> amp(0.5, 5.0);
  for (int k = 0; k < 10; ++k) {
    const RotatingFieldSegment seg(amp(rng), amp(rng), amp(rng));
    const auto traj = propagate_spinor(seg, cyclic_plus(seg), recommended_steps(seg));
    for (const auto& s : traj) CHECK(std::abs(s.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("input validation") {
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  CHECK_THROWS_AS(propagate_spinor(seg, SpinorState(1.0, 1.0), 4096),
                  std::invalid_argument);  // not normalized
  CHECK_THROWS_AS(propagate_spinor(seg, SpinorState(1.0, 0.0), 64),
                  std::invalid_argument);  // too few steps
  CHECK_THROWS_AS(propagate_spinor(RotatingFieldSegment(1.0, 1.0, -2.0),
                                   SpinorState(1.0, 0.0), 4096),
                  std::invalid_argument);  // bad segment
}

}  // TEST_SUITE

TEST_SUITE("bloch propagation") {

TEST_CASE("z-aligned vector is stationary without transverse drive") {
  const RotatingFieldSegment seg(0.0, 2.0, 1.0);
  const BlochPath path = propagate_bloch(seg, Eigen::Vector3d(0, 0, 1), 512);
  CHECK(path.closure_defect() < 1e-12);
  for (const auto& n : path.n) CHECK((n - Eigen::Vector3d(0, 0, 1)).norm() < 1e-12);
}

TEST_CASE("cyclic direction closes after one period") {
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  const Eigen::Vector3d n0 = cyclic_plus(seg).bloch();
  const BlochPath path = propagate_bloch(seg, n0, 4096);
  CHECK(path.closure_defect() < 1e-6);
}

TEST_CASE("antipodal start traces the mirror path") {
  const RotatingFieldSegment seg(1.2, 0.8, 1.7);
  const Eigen::Vector3d n0 = cyclic_plus(seg).bloch();
  const BlochPath plus = propagate_bloch(seg, n0, 2048);
  const BlochPath minus = propagate_bloch(seg, -n0, 2048);
  CHECK(minus.closure_defect() < 1e-6);
  for (size_t i = 0; i < plus.n.size(); i += 128)
    CHECK((plus.n[i] + minus.n[i]).norm() < 1e-8);
}

TEST_CASE("spinor and Bloch routes agree") {
  const RotatingFieldSegment seg(1.4, 2.3, 3.1);
  const SpinorState psi0 = cyclic_plus(seg);
  const auto traj = propagate_spinor(seg, psi0, 4096);
  const BlochPath path = propagate_bloch(seg, psi0.bloch(), 4096);
  for (size_t i = 0; i < traj.size(); i += 64)
    CHECK((traj[i].bloch() - path.n[i]).norm() < 1e-7);
}

TEST_CASE("rejects a non-unit start") {
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  CHECK_THROWS_AS(propagate_bloch(seg, Eigen::Vector3d(0, 0, 2), 512),
                  std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("cyclicity") {

TEST_CASE("the chi state is cyclic") {
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  const CyclicityReport rep = check_cyclicity(seg, cyclic_plus(seg));
  CHECK(rep.cyclic);
  CHECK(rep.defect < 1e-9);
}

TEST_CASE("a generic state is not cyclic") {
  // At omega0=omega1=1, omega=2 the one-cycle operator is a nontrivial
  // rotation, so |0> does not close.  (With omega0=omega1=omega the cycle
  // collapses to the identity and every state would be cyclic.)
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  const CyclicityReport rep = check_cyclicity(seg, SpinorState(1.0, 0.0));
  CHECK_FALSE(rep.cyclic);
  CHECK(rep.defect > 0.1);
}

TEST_CASE("|0> is cyclic under a purely longitudinal drive") {
  const RotatingFieldSegment seg(0.0, 1.3, 0.9);
  CHECK(check_cyclicity(seg, SpinorState(1.0, 0.0)).cyclic);
}

TEST_CASE("extraction refuses non-cyclic input") {
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  CHECK_THROWS_AS(extract_phases(seg, SpinorState(1.0, 0.0)), NonCyclicError);
}

}  // TEST_SUITE

TEST_SUITE("phase extraction") {

TEST_CASE("dark point omega0=omega1=1, omega=2") {
  const RotatingFieldSegment seg(1.0, 1.0, 2.0);
  const PhaseTriple p = extract_phase_triple(seg, cyclic_plus(seg));
  const double expected = -pi * (1.0 + 1.0 / std::sqrt(2.0));
  CHECK(std::abs(p.geometric - expected) < 1e-6);
  CHECK(std::abs(p.dynamic) < 1e-6);
  CHECK(std::abs(p.total - expected) < 1e-6);
}

TEST_CASE("resonant point omega0=1, omega1=omega=2") {
  const RotatingFieldSegment seg(1.0, 2.0, 2.0);
  const PhaseTriple p = extract_phase_triple(seg, cyclic_plus(seg));
  CHECK(std::abs(p.geometric + pi) < 1e-6);
  CHECK(std::abs(p.dynamic + 0.5 * pi) < 1e-6);
  CHECK(std::abs(p.total + 1.5 * pi) < 1e-6);
}

TEST_CASE("vanishing transverse drive gives a zero-area path") {
  const RotatingFieldSegment seg(0.0, 3.0, 1.0);
  const PhaseTriple p = extract_phase_triple(seg, SpinorState(1.0, 0.0));
  CHECK(std::abs(p.geometric) < 1e-9);
  CHECK(std::abs(p.dynamic + 3.0 * pi) < 1e-9);
}

TEST_CASE("triple satisfies total = dynamic + geometric") {
  const RotatingFieldSegment seg(2.2, 0.9, 1.4);
  const PhaseTriple p = extract_phase_triple(seg, cyclic_plus(seg));
  CHECK(std::abs(p.total - p.dynamic - p.geometric) < 1e-12);
}

TEST_CASE("halving the step shrinks the phase error at least 8x") {
  const RotatingFieldSegment seg(1.3, 0.7, 1.1);
  const double exact = single_qubit_phases(1.3, 0.7, 1.1).total;
  const SpinorState psi0 = cyclic_plus(seg);
  const double coarse = std::abs(extract_phase_triple(seg, psi0, 256).total - exact);
  const double fine = std::abs(extract_phase_triple(seg, psi0, 512).total - exact);
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("winding-resolved values are not reduced mod 2*pi") {
  const RotatingFieldSegment seg(0.0, 3.0, 1.0);
  const PhaseTriple p = extract_phase_triple(seg, SpinorState(1.0, 0.0));
  CHECK(p.total < -2.0 * pi);  // -3*pi survives unreduced
}

}  // TEST_SUITE

TEST_SUITE("solid angles") {

TEST_CASE("constant-latitude circle gives -pi*(1-cos theta)") {
  const double theta = 1.1;
  const int n = 2000;
  std::vector<double> t(n + 1);
  std::vector<Eigen::Vector3d> samples(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double phi = two_pi * i / n;
    t[i] = phi;
    samples[i] = Eigen::Vector3d(std::sin(theta) * std::cos(phi),
                                 std::sin(theta) * std::sin(phi), std::cos(theta));
  }
  const BlochPath path = BlochPath::from_samples(t, samples);
  CHECK(std::abs(solid_angle_of_path(path) + pi * (1.0 - std::cos(theta))) < 1e-9);
}

TEST_CASE("equatorial circle gives -pi") {
  const int n = 2000;
  std::vector<double> t(n + 1);
  std::vector<Eigen::Vector3d> samples(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double phi = two_pi * i / n;
    t[i] = phi;
    samples[i] = Eigen::Vector3d(std::cos(phi), std::sin(phi), 0.0);
  }
  CHECK(std::abs(solid_angle_of_path(BlochPath::from_samples(t, samples)) + pi) < 1e-9);
}

TEST_CASE("propagated dark path reproduces -1.6*pi and matches extraction") {
  const RotatingFieldSegment seg(3.0, 4.0, 6.25);
  const SpinorState psi0 = cyclic_plus(seg);
  const BlochPath path = propagate_bloch(seg, psi0.bloch(), 4096);
  const double aa = solid_angle_of_path(path);
  CHECK(std::abs(aa + 1.6 * pi) < 1e-7);
  CHECK(std::abs(aa - extract_phase_triple(seg, psi0).geometric) < 1e-7);
}

TEST_CASE("open paths are rejected") {
  std::vector<double> t{0.0, 1.0, 2.0};
  std::vector<Eigen::Vector3d> samples{Eigen::Vector3d(1, 0, 0),
                                       Eigen::Vector3d(0, 1, 0),
                                       Eigen::Vector3d(0, 0, 1)};
  CHECK_THROWS_AS(solid_angle_of_path(BlochPath::from_samples(t, samples)),
                  std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("field solid angle") {

TEST_CASE("equatorial field circle subtends 2*pi") {
  CHECK(berry_solid_angle(RotatingFieldSegment(1.0, 0.0, 1.0)) ==
        doctest::Approx(two_pi).epsilon(1e-12));
}

TEST_CASE("stationary field direction subtends zero") {
  CHECK(berry_solid_angle(RotatingFieldSegment(0.0, 2.0, 1.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("degenerate zero field is rejected") {
  CHECK_THROWS_AS(berry_solid_angle(RotatingFieldSegment(0.0, 0.0, 1.0)),
                  std::domain_error);
}

TEST_CASE("slow drive recovers half the field solid angle") {
  const double solid = berry_solid_angle(RotatingFieldSegment(1.0, 1.0, 2.0));
  CHECK(solid == doctest::Approx(two_pi * (1.0 - 1.0 / std::sqrt(2.0))).epsilon(1e-12));
  // Adiabatic check at omega = 0.001.
  const RotatingFieldSegment slow(1.0, 1.0, 0.001);
  const PhaseTriple p =
      extract_phase_triple(slow, SpinorState::at_polar(slow.cyclic_angle()),
                           recommended_steps(slow));
  CHECK(std::abs(p.geometric + 0.5 * solid) < 1e-3);
}

}  // TEST_SUITE
