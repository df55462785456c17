#include "spincycle/spinor.h"

#include <cmath>

namespace spincycle {

SpinorState SpinorState::at_polar(double chi) {
  return SpinorState(std::cos(chi / 2.0), std::sin(chi / 2.0));
}

double SpinorState::norm() const {
  return std::sqrt(std::norm(amp0) + std::norm(amp1));
}

SpinorState SpinorState::normalized() const {
  const double n = norm();
  return SpinorState(amp0 / n, amp1 / n);
}

bool SpinorState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) < tol;
}

Eigen::Vector3d SpinorState::bloch() const {
  const std::complex<double> cross = std::conj(amp0) * amp1;
  return Eigen::Vector3d(2.0 * cross.real(), 2.0 * cross.imag(),
                         std::norm(amp0) - std::norm(amp1));
}

std::complex<double> SpinorState::overlap(const SpinorState& other) const {
  return std::conj(amp0) * other.amp0 + std::conj(amp1) * other.amp1;
}

namespace {
Eigen::Matrix2cd make_pauli(int which) {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (which) {
    case 0: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 1: m(0, 1) = -i; m(1, 0) = i; break;
    case 2: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: m.setIdentity(); break;
  }
  return m;
}
}  // namespace

const Eigen::Matrix2cd& pauli_x() { static const Eigen::Matrix2cd m = make_pauli(0); return m; }
const Eigen::Matrix2cd& pauli_y() { static const Eigen::Matrix2cd m = make_pauli(1); return m; }
const Eigen::Matrix2cd& pauli_z() { static const Eigen::Matrix2cd m = make_pauli(2); return m; }
const Eigen::Matrix2cd& identity2() { static const Eigen::Matrix2cd m = make_pauli(3); return m; }

}  // namespace spincycle
