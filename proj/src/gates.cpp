#include "spincycle/gates.h"

#include <cmath>
#include <complex>

#include "spincycle/phases.h"
#include "spincycle/spinor.h"

namespace spincycle {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

Gate2 build_single_qubit_gate(double chi, double gamma) {
  const double c = std::cos(gamma), s = std::sin(gamma);
  Gate2 u;
  u(0, 0) = c + kI * s * std::cos(chi);
  u(0, 1) = kI * s * std::sin(chi);
  u(1, 0) = kI * s * std::sin(chi);
  u(1, 1) = c - kI * s * std::cos(chi);
  return u;
}

Gate2 gate_adjoint(double chi, double gamma) {
  return build_single_qubit_gate(chi, -gamma);
}

bool noncommutable(double chi1, double gamma1, double chi2, double gamma2,
                   double zero_tol) {
  return std::abs(std::sin(gamma1) * std::sin(gamma2) * std::sin(chi2 - chi1)) >
         zero_tol;
}

TwoQubitDiagGate build_two_qubit_diag(double gamma0, double chi0, double gamma1,
                                      double chi1) {
  TwoQubitDiagGate g;
  g.matrix = Gate4::Zero();
  g.matrix.block<2, 2>(0, 0) = build_single_qubit_gate(chi0, gamma0);
  g.matrix.block<2, 2>(2, 2) = build_single_qubit_gate(chi1, gamma1);
  g.nontrivial = angle_distance_mod_2pi(gamma0, gamma1) > 1e-9 ||
                 angle_distance_mod_2pi(chi0, chi1) > 1e-9;
  return g;
}

Gate4 remove_control1_local_phase(const Gate4& gate, double gamma1) {
  Gate4 g = gate;
  g.block<2, 2>(2, 2) *= std::exp(-kI * gamma1);
  return g;
}

Gate4 build_controlled_gate(double gamma, double chi) {
  Gate4 g = Gate4::Identity();
  g.block<2, 2>(2, 2) = build_single_qubit_gate(chi, gamma);
  return g;
}

Gate4 compose_cnot() {
  const Gate2 mix = build_single_qubit_gate(pi / 4.0, pi / 2.0);
  Gate4 local = Gate4::Zero();
  local.block<2, 2>(0, 0) = mix;
  local.block<2, 2>(2, 2) = mix;
  const Gate4 diag = build_two_qubit_diag(0.0, 0.0, pi / 2.0, 0.0).matrix;
  return local * diag * local.adjoint();
}

Eigen::Matrix2cd AxisRotation::su2() const {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  Eigen::Matrix2cd r;
  r << c, -s, s, c;
  return r;
}

Eigen::Matrix3d AxisRotation::so3() const {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix3d r;
  r << c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c;
  return r;
}

RotatingFieldSegment rotate_field_axis(const RotatingFieldSegment& seg,
                                       double new_chi) {
  seg.validate();
  RotatingFieldSegment out = seg;
  out.axis_tilt += new_chi - seg.cyclic_angle();
  return out;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) < tol;
}

bool equal_up_to_global_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                              double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // Phase-align on the largest entry of b.
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < tol) return max_abs_diff(a, b) < tol;
  const std::complex<double> phase = a(r, c) / b(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return max_abs_diff(a, phase * b) < tol;
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  return (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace spincycle
