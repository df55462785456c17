#pragma once

#include "spincycle/phases.h"

namespace spincycle {

// Polar angle of the cyclic pair for the rotating drive,
// chi = atan2(omega0, omega1 - omega), in [0, pi] for omega0 >= 0.
struct CyclicStateSpec {
  double chi = 0.0;
};

CyclicStateSpec cyclic_angle_chi(double omega0, double omega1, double omega);

// Closed-form one-cycle phases for the rotating drive, with
// Omega = sqrt(omega0^2 + (omega1 - omega)^2):
//   geometric = -pi (1 - (omega1 - omega)/Omega)
//   dynamic   = -pi (omega0^2 + omega1 (omega1 - omega)) / (omega Omega)
//   total     = -pi (1 + Omega/omega)
PhaseTriple single_qubit_phases(double omega0, double omega1, double omega);

// Target-qubit drive parameters with a sigma_z sigma_z coupling to a control
// qubit held in computational state delta.
struct TwoQubitParams {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega = 1.0;
  double coupling = 0.0;  // J
  int delta = 0;          // control state, 0 or 1

  double omega1_delta() const { return omega1 + (2 * delta - 1) * coupling; }
};

// One-cycle conditional phases: single_qubit_phases with omega1 replaced by
// omega1 + (2*delta - 1)*J.
PhaseTriple conditional_phases(const TwoQubitParams& p);

// Drive frequency making the cyclic pair dark (zero instantaneous energy):
// omega = (omega0^2 + omega1^2) / omega1.
double dark_state_frequency_single(double omega0, double omega1);

struct TwoQubitDarkCondition {
  double omega = 0.0;   // 2 * omega1
  double omega0 = 0.0;  // sqrt(omega1^2 - J^2)
};

// Parameters making both conditional cyclic pairs dark.  Throws
// std::domain_error when omega1 < J (no real transverse amplitude);
// omega1 == J returns the degenerate boundary omega0 = 0.
TwoQubitDarkCondition dark_state_condition_two_qubit(double omega1, double coupling);

}  // namespace spincycle
