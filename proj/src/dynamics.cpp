#include "spincycle/dynamics.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "spincycle/gates.h"

namespace spincycle {

namespace {

using std::complex;
const complex<double> kI(0.0, 1.0);

// -i H(t) psi for H = b.sigma/2, written out to keep the stepper allocation-free.
inline Eigen::Vector2cd schrodinger_rhs(const Eigen::Vector3d& b,
                                        const Eigen::Vector2cd& p) {
  const complex<double> h00(0.5 * b.z(), 0.0);
  const complex<double> h01(0.5 * b.x(), -0.5 * b.y());
  const complex<double> h10(0.5 * b.x(), 0.5 * b.y());
  return Eigen::Vector2cd(-kI * (h00 * p(0) + h01 * p(1)),
                          -kI * (h10 * p(0) - h00 * p(1)));
}

inline Eigen::Vector2cd rk4_spinor_step(const RotatingFieldSegment& seg,
                                        double t, double dt,
                                        const Eigen::Vector2cd& p) {
  const Eigen::Vector3d b1 = seg.field(t);
  const Eigen::Vector3d b2 = seg.field(t + 0.5 * dt);
  const Eigen::Vector3d b3 = seg.field(t + dt);
  const Eigen::Vector2cd k1 = schrodinger_rhs(b1, p);
  const Eigen::Vector2cd k2 = schrodinger_rhs(b2, p + 0.5 * dt * k1);
  const Eigen::Vector2cd k3 = schrodinger_rhs(b2, p + 0.5 * dt * k2);
  const Eigen::Vector2cd k4 = schrodinger_rhs(b3, p + dt * k3);
  return p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline Eigen::Vector3d bloch_of(const Eigen::Vector2cd& p) {
  const complex<double> cross = std::conj(p(0)) * p(1);
  return Eigen::Vector3d(2.0 * cross.real(), 2.0 * cross.imag(),
                         std::norm(p(0)) - std::norm(p(1)));
}

void require_steps(int steps) {
  if (steps < kMinSteps)
    throw std::invalid_argument("step count below the minimum of 100");
}

void require_normalized(const SpinorState& s) {
  if (!s.is_normalized())
    throw std::invalid_argument("initial state is not normalized");
}

// Composite Simpson over steps+1 uniform samples (steps even).
double simpson(const std::vector<double>& f, double dt) {
  const int n = static_cast<int>(f.size()) - 1;
  double acc = f[0] + f[n];
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f[i];
  return acc * dt / 3.0;
}

struct PassResult {
  double dynamic = 0.0;
  double geometric = 0.0;
  Eigen::Vector2cd final_state;
};

// Single propagation pass accumulating the dynamic-phase integrand
// <psi|H|psi> = b.n/2 and the geometric integrand (1 - cos theta) dphi/dt,
// with dphi/dt evaluated from the Bloch equation so the quadrature stays
// fourth-order.
PassResult accumulate_pass(const RotatingFieldSegment& seg,
                           const Eigen::Vector2cd& initial, int steps) {
  const double dt = seg.duration / steps;
  std::vector<double> energy(steps + 1), geo(steps + 1);
  PassResult out;

  Eigen::Vector2cd p = initial;
  for (int i = 0; i <= steps; ++i) {
    const double t = i * dt;
    const Eigen::Vector3d b = seg.field(t);
    const Eigen::Vector3d n = bloch_of(p);
    energy[i] = 0.5 * b.dot(n);
    const double rho2 = n.x() * n.x() + n.y() * n.y();
    if (rho2 < 1e-20) {
      geo[i] = 0.0;  // exact pole: no azimuth advance contributes
    } else {
      const Eigen::Vector3d ndot = b.cross(n);
      const double phidot = (n.x() * ndot.y() - n.y() * ndot.x()) / rho2;
      geo[i] = (1.0 - n.z()) * phidot;
    }
    if (i < steps) p = rk4_spinor_step(seg, t, dt, p);
  }
  out.dynamic = -simpson(energy, dt);
  out.geometric = -0.5 * simpson(geo, dt);
  out.final_state = p;
  return out;
}

int even_steps(int steps) { return steps % 2 ? steps + 1 : steps; }

}  // namespace

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

BlochPath BlochPath::from_samples(std::vector<double> times,
                                  std::vector<Eigen::Vector3d> samples) {
  if (times.size() != samples.size() || times.empty())
    throw std::invalid_argument("path needs matching, non-empty time and sample tracks");
  BlochPath path;
  path.t = std::move(times);
  path.n = std::move(samples);
  path.theta.resize(path.n.size());
  path.phi.resize(path.n.size());
  double prev_phi = 0.0;
  bool have_prev = false;
  for (size_t i = 0; i < path.n.size(); ++i) {
    const Eigen::Vector3d& v = path.n[i];
    path.theta[i] = std::acos(std::clamp(v.z(), -1.0, 1.0));
    const double rho2 = v.x() * v.x() + v.y() * v.y();
    if (rho2 < 1e-24) {
      path.phi[i] = have_prev ? prev_phi : 0.0;  // azimuth undefined at a pole
    } else {
      const double raw = std::atan2(v.y(), v.x());
      if (!have_prev) {
        path.phi[i] = raw;
      } else {
        path.phi[i] = prev_phi + principal_angle(raw - prev_phi);
      }
      have_prev = true;
    }
    prev_phi = path.phi[i];
  }
  return path;
}

double BlochPath::closure_defect() const {
  return (n.back() - n.front()).norm();
}

double BlochPath::max_norm_defect() const {
  double worst = 0.0;
  for (const auto& v : n) worst = std::max(worst, std::abs(v.norm() - 1.0));
  return worst;
}

std::vector<SpinorState> propagate_spinor(const RotatingFieldSegment& seg,
                                          const SpinorState& initial, int steps) {
  seg.validate();
  require_steps(steps);
  require_normalized(initial);
  const double dt = seg.duration / steps;
  std::vector<SpinorState> out;
  out.reserve(steps + 1);
  Eigen::Vector2cd p = initial.vector();
  out.emplace_back(p);
  for (int i = 0; i < steps; ++i) {
    p = rk4_spinor_step(seg, i * dt, dt, p);
    out.emplace_back(p);
  }
  return out;
}

BlochPath propagate_bloch(const RotatingFieldSegment& seg,
                          const Eigen::Vector3d& initial, int steps) {
  seg.validate();
  require_steps(steps);
  if (std::abs(initial.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("initial Bloch vector is not a unit vector");
  const double dt = seg.duration / steps;
  std::vector<double> times(steps + 1);
  std::vector<Eigen::Vector3d> samples(steps + 1);
  Eigen::Vector3d n = initial;
  times[0] = 0.0;
  samples[0] = n;
  auto rhs = [&seg](double t, const Eigen::Vector3d& v) {
    return seg.field(t).cross(v);
  };
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    const Eigen::Vector3d k1 = rhs(t, n);
    const Eigen::Vector3d k2 = rhs(t + 0.5 * dt, n + 0.5 * dt * k1);
    const Eigen::Vector3d k3 = rhs(t + 0.5 * dt, n + 0.5 * dt * k2);
    const Eigen::Vector3d k4 = rhs(t + dt, n + dt * k3);
    n += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    times[i + 1] = t + dt;
    samples[i + 1] = n;
  }
  return BlochPath::from_samples(std::move(times), std::move(samples));
}

CyclicityReport check_cyclicity(const RotatingFieldSegment& seg,
                                const SpinorState& initial, int steps, double tol) {
  seg.validate();
  require_steps(steps);
  require_normalized(initial);
  const double dt = seg.duration / steps;
  Eigen::Vector2cd p = initial.vector();
  for (int i = 0; i < steps; ++i) p = rk4_spinor_step(seg, i * dt, dt, p);
  const complex<double> ovl = initial.vector().dot(p);
  CyclicityReport rep;
  rep.defect = 1.0 - std::abs(ovl);
  rep.cyclic = rep.defect < tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Phase extraction
// ---------------------------------------------------------------------------

ExtractionResult extract_phases(const RotatingFieldSegment& seg,
                                const SpinorState& initial, int steps,
                                double cyclicity_tol) {
  seg.validate();
  require_steps(steps);
  require_normalized(initial);
  steps = even_steps(steps);

  // Work in the frame of the drive axis: the dynamic phase and the overlap
  // are rotation invariants, and the azimuth winding of the geometric
  // integral is referenced to the drive axis, where cyclic paths keep a
  // constant latitude and never sweep a coordinate pole.  This is what makes
  // every phase independent of the axis tilt.
  RotatingFieldSegment frame = seg;
  frame.axis_tilt = 0.0;
  Eigen::Vector2cd psi0 = initial.vector();
  if (seg.axis_tilt != 0.0) {
    const AxisRotation undo{-seg.axis_tilt};
    psi0 = undo.su2() * psi0;
  }

  const PassResult pass = accumulate_pass(frame, psi0, steps);

  ExtractionResult res;
  res.phases.dynamic = pass.dynamic;
  res.phases.geometric = pass.geometric;
  res.phases.total = pass.dynamic + pass.geometric;
  const complex<double> ovl = psi0.dot(pass.final_state);
  res.overlap_phase = std::arg(ovl);
  res.cyclicity_defect = 1.0 - std::abs(ovl);
  if (!(res.cyclicity_defect < cyclicity_tol))
    throw NonCyclicError("initial state is not cyclic for this segment (overlap defect " +
                         std::to_string(res.cyclicity_defect) + ")");
  return res;
}

PhaseTriple extract_phase_triple(const RotatingFieldSegment& seg,
                                 const SpinorState& initial, int steps,
                                 double cyclicity_tol) {
  return extract_phases(seg, initial, steps, cyclicity_tol).phases;
}

double solid_angle_of_path(const BlochPath& path, double closure_tol) {
  if (path.n.size() < 3) throw std::invalid_argument("path has too few samples");
  if (path.closure_defect() > closure_tol)
    throw std::invalid_argument("path is not closed");
  double acc = 0.0;
  for (size_t i = 0; i + 1 < path.n.size(); ++i) {
    const double f0 = 1.0 - std::cos(path.theta[i]);
    const double f1 = 1.0 - std::cos(path.theta[i + 1]);
    acc += 0.5 * (f0 + f1) * (path.phi[i + 1] - path.phi[i]);
  }
  return -0.5 * acc;
}

double berry_solid_angle(const RotatingFieldSegment& seg) {
  seg.validate();
  const double magnitude = std::hypot(seg.omega0, seg.omega1);
  if (magnitude == 0.0)
    throw std::domain_error("field vanishes; solid angle undefined at the degeneracy");
  // The field direction traces a cone about z (the tilt only rotates it);
  // the enclosed solid angle is 2*pi*(1 - cos of the cone angle).
  const double bz = (seg.reversed ? -seg.omega1 : seg.omega1);
  return two_pi * (1.0 - bz / magnitude);
}

int recommended_steps(const RotatingFieldSegment& seg) {
  const double rate = std::hypot(seg.omega0, seg.omega1) + seg.omega;
  const double cycles = seg.duration * seg.omega / two_pi;
  double n = 262.0 * (rate / seg.omega) * std::max(1.0, cycles);
  n = std::min(n, 4.0e6);
  int steps = std::max(kDefaultSteps, static_cast<int>(std::ceil(n)));
  return steps % 2 ? steps + 1 : steps;
}

// ---------------------------------------------------------------------------
// Two-qubit propagation
// ---------------------------------------------------------------------------

Eigen::Matrix4cd two_qubit_hamiltonian(const RotatingFieldSegment& control,
                                       const RotatingFieldSegment& target,
                                       double coupling, double t) {
  const Eigen::Matrix2cd hc = control.hamiltonian(t);
  const Eigen::Matrix2cd ht = target.hamiltonian(t);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h.block<2, 2>(0, 0) = ht + hc(0, 0) * id;
  h.block<2, 2>(2, 2) = ht + hc(1, 1) * id;
  h.block<2, 2>(0, 2) = hc(0, 1) * id;
  h.block<2, 2>(2, 0) = hc(1, 0) * id;
  // Spin-spin term, signed so control |1> raises the target longitudinal
  // frequency by +J.
  const double j2 = 0.5 * coupling;
  h(0, 0) -= j2;
  h(1, 1) += j2;
  h(2, 2) += j2;
  h(3, 3) -= j2;
  return h;
}

namespace {

inline Eigen::Vector4cd rhs4(const RotatingFieldSegment& control,
                             const RotatingFieldSegment& target, double coupling,
                             double t, const Eigen::Vector4cd& p) {
  return -kI * (two_qubit_hamiltonian(control, target, coupling, t) * p);
}

inline Eigen::Vector4cd rk4_step4(const RotatingFieldSegment& control,
                                  const RotatingFieldSegment& target,
                                  double coupling, double t, double dt,
                                  const Eigen::Vector4cd& p) {
  const Eigen::Vector4cd k1 = rhs4(control, target, coupling, t, p);
  const Eigen::Vector4cd k2 = rhs4(control, target, coupling, t + 0.5 * dt, p + 0.5 * dt * k1);
  const Eigen::Vector4cd k3 = rhs4(control, target, coupling, t + 0.5 * dt, p + 0.5 * dt * k2);
  const Eigen::Vector4cd k4 = rhs4(control, target, coupling, t + dt, p + dt * k3);
  return p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::vector<Eigen::Vector4cd> propagate_two_qubit_full(
    const RotatingFieldSegment& control, const RotatingFieldSegment& target,
    double coupling, const Eigen::Vector4cd& initial, int steps) {
  control.validate();
  target.validate();
  require_steps(steps);
  if (std::abs(initial.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("initial two-qubit state is not normalized");
  if (std::abs(control.duration - target.duration) > 1e-12 * target.duration)
    throw std::invalid_argument("control and target segments must share a duration");
  const double dt = target.duration / steps;
  std::vector<Eigen::Vector4cd> out;
  out.reserve(steps + 1);
  Eigen::Vector4cd p = initial;
  out.push_back(p);
  for (int i = 0; i < steps; ++i) {
    p = rk4_step4(control, target, coupling, i * dt, dt, p);
    out.push_back(p);
  }
  return out;
}

ExtractionResult extract_conditional_phases_full(
    const RotatingFieldSegment& control, const RotatingFieldSegment& target,
    double coupling, int delta, int steps, double cyclicity_tol) {
  control.validate();
  target.validate();
  require_steps(steps);
  if (delta != 0 && delta != 1)
    throw std::invalid_argument("control state must be 0 or 1");
  const Eigen::Vector3d bc = control.field(0.0);
  if (std::abs(bc.x()) > 1e-15 || std::abs(bc.y()) > 1e-15)
    throw std::invalid_argument("conditional extraction needs an undriven, untilted control");
  if (std::abs(control.duration - target.duration) > 1e-12 * target.duration)
    throw std::invalid_argument("control and target segments must share a duration");
  steps = even_steps(steps);

  const RotatingFieldSegment effective = target.conditional(coupling, delta);
  const SpinorState target0 = SpinorState::at_polar(effective.cyclic_angle());

  Eigen::Vector4cd p = Eigen::Vector4cd::Zero();
  p(2 * delta) = target0.amp0;
  p(2 * delta + 1) = target0.amp1;
  const Eigen::Vector4cd initial = p;

  // Control energy is constant for an undriven control in |delta>; subtract
  // it so the accumulated dynamic phase is the target's.
  const double control_energy = 0.5 * (delta == 0 ? 1.0 : -1.0) * bc.z();

  // Geometric integrand referenced to the target drive axis, as in
  // extract_phases.
  RotatingFieldSegment frame = effective;
  frame.axis_tilt = 0.0;
  const AxisRotation undo{-effective.axis_tilt};
  const Eigen::Matrix3d to_frame = undo.so3();

  const double dt = target.duration / steps;
  std::vector<double> energy(steps + 1), geo(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double t = i * dt;
    const Eigen::Matrix4cd h = two_qubit_hamiltonian(control, target, coupling, t);
    energy[i] = std::real(p.dot(h * p)) - control_energy;
    // Reduced target Bloch vector; the product structure is exact here.
    const complex<double> c01 = std::conj(p(0)) * p(1) + std::conj(p(2)) * p(3);
    Eigen::Vector3d n(2.0 * c01.real(), 2.0 * c01.imag(),
                      std::norm(p(0)) - std::norm(p(1)) + std::norm(p(2)) - std::norm(p(3)));
    n = to_frame * n;
    const double rho2 = n.x() * n.x() + n.y() * n.y();
    if (rho2 < 1e-20) {
      geo[i] = 0.0;
    } else {
      const Eigen::Vector3d ndot = frame.field(t).cross(n);
      geo[i] = (1.0 - n.z()) * (n.x() * ndot.y() - n.y() * ndot.x()) / rho2;
    }
    if (i < steps) p = rk4_step4(control, target, coupling, t, dt, p);
  }

  ExtractionResult res;
  res.phases.dynamic = -simpson(energy, dt);
  res.phases.geometric = -0.5 * simpson(geo, dt);
  res.phases.total = res.phases.dynamic + res.phases.geometric;
  const complex<double> ovl = initial.dot(p);
  // Undo the control's own accumulated phase in the overlap.
  res.overlap_phase = principal_angle(std::arg(ovl) + control_energy * target.duration);
  res.cyclicity_defect = 1.0 - std::abs(ovl);
  if (!(res.cyclicity_defect < cyclicity_tol))
    throw NonCyclicError("conditional target state is not cyclic (overlap defect " +
                         std::to_string(res.cyclicity_defect) + ")");
  return res;
}

double effective_model_phase_error(const RotatingFieldSegment& control,
                                   const RotatingFieldSegment& target,
                                   double coupling, int delta, int steps) {
  control.validate();
  target.validate();
  require_steps(steps);
  if (delta != 0 && delta != 1)
    throw std::invalid_argument("control state must be 0 or 1");

  const RotatingFieldSegment effective = target.conditional(coupling, delta);
  const SpinorState target0 = SpinorState::at_polar(effective.cyclic_angle());

  Eigen::Vector4cd p = Eigen::Vector4cd::Zero();
  p(2 * delta) = target0.amp0;
  p(2 * delta + 1) = target0.amp1;
  const double dt = target.duration / steps;
  for (int i = 0; i < steps; ++i)
    p = rk4_step4(control, target, coupling, i * dt, dt, p);

  // Target amplitude conditioned on reading the control back in |delta>.
  const Eigen::Vector2cd projected(p(2 * delta), p(2 * delta + 1));
  const complex<double> target_ovl = target0.vector().dot(projected);

  // Reference: the control alone, to divide out its own phase.
  Eigen::Vector2cd c = Eigen::Vector2cd::Zero();
  c(delta) = 1.0;
  for (int i = 0; i < steps; ++i) c = rk4_spinor_step(control, i * dt, dt, c);
  const complex<double> control_ovl = c(delta);

  const double measured = std::arg(target_ovl) - std::arg(control_ovl);

  // Effective single-qubit prediction for the conditional total phase.
  const double w1d = (effective.reversed ? -effective.omega1 : effective.omega1);
  const double big_omega = std::hypot(effective.omega0, w1d - effective.omega);
  const double predicted = -pi * (1.0 + big_omega / effective.omega);

  return angle_distance_mod_2pi(measured, predicted);
}

}  // namespace spincycle
