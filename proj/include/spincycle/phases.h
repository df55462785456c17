#pragma once

#include <numbers>

namespace spincycle {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Total / dynamic / geometric phase accumulated over an evolution, in
// radians.  Values are winding-resolved, i.e. not reduced mod 2*pi, so a
// phase like -1.7071*pi is reported as such.
struct PhaseTriple {
  double total = 0.0;
  double dynamic = 0.0;
  double geometric = 0.0;
};

// Reduce an angle to the principal branch (-pi, pi].
double principal_angle(double angle);

// Distance between two angles compared mod 2*pi, in [0, pi].
double angle_distance_mod_2pi(double a, double b);

}  // namespace spincycle
