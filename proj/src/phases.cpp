#include "spincycle/phases.h"

#include <cmath>

namespace spincycle {

double principal_angle(double angle) {
  double a = std::remainder(angle, two_pi);
  if (a <= -pi) a += two_pi;
  return a;
}

double angle_distance_mod_2pi(double a, double b) {
  return std::abs(principal_angle(a - b));
}

}  // namespace spincycle
