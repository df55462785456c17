#pragma once

#include <complex>

#include <Eigen/Dense>

namespace spincycle {

// Two-component state on the computational basis |0>, |1>, with |0> the
// sigma_z = +1 eigenstate.
struct SpinorState {
  std::complex<double> amp0{1.0, 0.0};
  std::complex<double> amp1{0.0, 0.0};

  SpinorState() = default;
  SpinorState(std::complex<double> a0, std::complex<double> a1) : amp0(a0), amp1(a1) {}
  explicit SpinorState(const Eigen::Vector2cd& v) : amp0(v(0)), amp1(v(1)) {}

  // State with Bloch vector (sin chi, 0, cos chi).
  static SpinorState at_polar(double chi);

  double norm() const;
  SpinorState normalized() const;
  bool is_normalized(double tol = 1e-9) const;

  Eigen::Vector2cd vector() const { return Eigen::Vector2cd(amp0, amp1); }

  // n = <psi| sigma |psi>
  Eigen::Vector3d bloch() const;

  // <this | other>
  std::complex<double> overlap(const SpinorState& other) const;
};

// Pauli matrices and the 2x2 identity.
const Eigen::Matrix2cd& pauli_x();
const Eigen::Matrix2cd& pauli_y();
const Eigen::Matrix2cd& pauli_z();
const Eigen::Matrix2cd& identity2();

}  // namespace spincycle
