#pragma once

#include <Eigen/Dense>

#include "spincycle/field.h"

namespace spincycle {

using Gate2 = Eigen::Matrix2cd;
using Gate4 = Eigen::Matrix4cd;

// One-cycle gate for a cyclic pair at polar angle chi with total phase gamma:
// cos(gamma) I + i sin(gamma) (sigma_z cos chi + sigma_x sin chi).
Gate2 build_single_qubit_gate(double chi, double gamma);

// Adjoint realized by running the same cycle with the opposite phase.
Gate2 gate_adjoint(double chi, double gamma);

// Whether the two gates fail to commute: sin g1 sin g2 sin(chi2 - chi1) != 0.
bool noncommutable(double chi1, double gamma1, double chi2, double gamma2,
                   double zero_tol = 1e-12);

struct TwoQubitDiagGate {
  Gate4 matrix;
  bool nontrivial = false;  // gamma or chi differ between control blocks (mod 2*pi)
};

// Block-diagonal conditional gate diag(U(chi0, gamma0), U(chi1, gamma1)).
TwoQubitDiagGate build_two_qubit_diag(double gamma0, double chi0,
                                      double gamma1, double chi1);

// Multiply the control-1 block by exp(-i*gamma1), the target-local phase
// that turns the chi = 0 conditional gate into a controlled phase.
Gate4 remove_control1_local_phase(const Gate4& gate, double gamma1);

// diag(I, U(chi, gamma)): target idle when the control is in |0>.
Gate4 build_controlled_gate(double gamma, double chi);

// [I x U(pi/4, pi/2)] diag(1,1,i,-i) [I x U(pi/4, pi/2)]^dagger = diag(I, i sigma_x).
Gate4 compose_cnot();

// Rotation about the y axis in both representations; conjugating sigma.n by
// su2() equals rotating n by so3().
struct AxisRotation {
  double angle = 0.0;

  Eigen::Matrix2cd su2() const;  // exp(-i (angle/2) sigma_y)
  Eigen::Matrix3d so3() const;   // maps polar angle chi -> chi + angle in the xz plane
};

// Retilt the drive so its cyclic state sits at new_chi; all one-cycle phases
// are unchanged.
RotatingFieldSegment rotate_field_axis(const RotatingFieldSegment& seg,
                                       double new_chi);

// Comparison helpers.
double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
bool approx_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol);
bool equal_up_to_global_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                              double tol);
double unitarity_defect(const Eigen::MatrixXcd& u);  // max |U^dag U - I|

}  // namespace spincycle
