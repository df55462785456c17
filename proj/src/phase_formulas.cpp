#include "spincycle/phase_formulas.h"

#include <cmath>
#include <stdexcept>

namespace spincycle {

CyclicStateSpec cyclic_angle_chi(double omega0, double omega1, double omega) {
  if (omega0 == 0.0 && omega1 == omega)
    throw std::domain_error("cyclic angle undefined: transverse drive and detuning both vanish");
  if (omega0 < 0.0) throw std::domain_error("transverse amplitude must be non-negative");
  return CyclicStateSpec{std::atan2(omega0, omega1 - omega)};
}

PhaseTriple single_qubit_phases(double omega0, double omega1, double omega) {
  if (!(omega > 0.0)) throw std::domain_error("drive rotation rate must be positive");
  const double detuning = omega1 - omega;
  const double big_omega = std::hypot(omega0, detuning);
  if (big_omega == 0.0)
    throw std::domain_error("degenerate drive: rotating-frame field vanishes");
  PhaseTriple p;
  p.geometric = -pi * (1.0 - detuning / big_omega);
  p.dynamic = -pi * (omega0 * omega0 + omega1 * detuning) / (omega * big_omega);
  p.total = -pi * (1.0 + big_omega / omega);
  return p;
}

PhaseTriple conditional_phases(const TwoQubitParams& p) {
  return single_qubit_phases(p.omega0, p.omega1_delta(), p.omega);
}

double dark_state_frequency_single(double omega0, double omega1) {
  if (!(omega1 > 0.0))
    throw std::domain_error("no dark-state drive frequency for omega1 <= 0");
  return (omega0 * omega0 + omega1 * omega1) / omega1;
}

TwoQubitDarkCondition dark_state_condition_two_qubit(double omega1, double coupling) {
  if (!(coupling > 0.0)) throw std::domain_error("coupling must be positive");
  if (omega1 < coupling)
    throw std::domain_error("no real transverse amplitude: omega1 < J");
  TwoQubitDarkCondition c;
  c.omega = 2.0 * omega1;
  c.omega0 = std::sqrt(omega1 * omega1 - coupling * coupling);
  return c;
}

}  // namespace spincycle
