#pragma once

#include <Eigen/Dense>

#include "spincycle/phases.h"

namespace spincycle {

// One loop of the rotating drive.  Everything is expressed as angular
// frequencies (hbar = 1); physical field amplitudes never appear.  The
// effective field is
//
//   b(t) = R_y(axis_tilt) * s * (omega0 cos(omega t), omega0 sin(omega t), omega1)
//
// with s = -1 when `reversed` is set (second-loop drive), and the qubit
// Hamiltonian is H(t) = b(t) . sigma / 2.
struct RotatingFieldSegment {
  double omega0 = 0.0;   // transverse drive strength, >= 0
  double omega1 = 0.0;   // longitudinal component
  double omega = 1.0;    // rotation rate of the transverse field, > 0
  bool reversed = false;
  double axis_tilt = 0.0;  // rotation of the whole field about y
  double duration = 0.0;   // defaults to one cycle, 2*pi/omega

  RotatingFieldSegment() = default;
  RotatingFieldSegment(double w0, double w1, double w, bool rev = false,
                       double tilt = 0.0, double dur = 0.0);

  static RotatingFieldSegment one_cycle(double w0, double w1, double w);

  double period() const { return two_pi / omega; }

  // Effective field, reversal and tilt applied.
  Eigen::Vector3d field(double t) const;
  Eigen::Matrix2cd hamiltonian(double t) const;

  // In-plane polar angle of the cyclic state this segment drives around:
  // atan2(omega0, omega1 - omega) for a forward loop, atan2(omega0,
  // omega1 + omega) for a reversed one, plus the axis tilt.
  double cyclic_angle() const;

  // Same drive as seen by a target qubit when the control sits in
  // computational state delta: the stored longitudinal frequency is shifted
  // by (2*delta - 1) * coupling before the reversal sign is applied.
  RotatingFieldSegment conditional(double coupling, int delta) const;

  // Throws std::invalid_argument on a non-physical segment.
  void validate() const;
};

}  // namespace spincycle
