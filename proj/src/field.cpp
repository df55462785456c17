#include "spincycle/field.h"

#include <cmath>
#include <stdexcept>

#include "spincycle/spinor.h"

namespace spincycle {

RotatingFieldSegment::RotatingFieldSegment(double w0, double w1, double w,
                                           bool rev, double tilt, double dur)
    : omega0(w0), omega1(w1), omega(w), reversed(rev), axis_tilt(tilt),
      duration(dur > 0.0 ? dur : two_pi / w) {}

RotatingFieldSegment RotatingFieldSegment::one_cycle(double w0, double w1, double w) {
  return RotatingFieldSegment(w0, w1, w);
}

Eigen::Vector3d RotatingFieldSegment::field(double t) const {
  const double s = reversed ? -1.0 : 1.0;
  Eigen::Vector3d b(s * omega0 * std::cos(omega * t),
                    s * omega0 * std::sin(omega * t),
                    s * omega1);
  if (axis_tilt != 0.0) {
    const double c = std::cos(axis_tilt), sn = std::sin(axis_tilt);
    b = Eigen::Vector3d(c * b.x() + sn * b.z(), b.y(), -sn * b.x() + c * b.z());
  }
  return b;
}

Eigen::Matrix2cd RotatingFieldSegment::hamiltonian(double t) const {
  const Eigen::Vector3d b = field(t);
  Eigen::Matrix2cd h;
  h(0, 0) = std::complex<double>(0.5 * b.z(), 0.0);
  h(0, 1) = std::complex<double>(0.5 * b.x(), -0.5 * b.y());
  h(1, 0) = std::complex<double>(0.5 * b.x(), 0.5 * b.y());
  h(1, 1) = std::complex<double>(-0.5 * b.z(), 0.0);
  return h;
}

double RotatingFieldSegment::cyclic_angle() const {
  const double base = reversed ? std::atan2(omega0, omega1 + omega)
                               : std::atan2(omega0, omega1 - omega);
  return base + axis_tilt;
}

RotatingFieldSegment RotatingFieldSegment::conditional(double coupling, int delta) const {
  if (delta != 0 && delta != 1)
    throw std::invalid_argument("control state must be 0 or 1");
  RotatingFieldSegment s = *this;
  s.omega1 += (2 * delta - 1) * coupling;
  return s;
}

void RotatingFieldSegment::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("drive rotation rate must be positive");
  if (!(omega0 >= 0.0)) throw std::invalid_argument("transverse amplitude must be non-negative");
  if (!(duration > 0.0)) throw std::invalid_argument("segment duration must be positive");
  if (!std::isfinite(omega0) || !std::isfinite(omega1) || !std::isfinite(omega) ||
      !std::isfinite(axis_tilt) || !std::isfinite(duration))
    throw std::invalid_argument("segment parameters must be finite");
}

}  // namespace spincycle
