#pragma once

#include <stdexcept>

namespace asl {

/// Shrinking analyticity radius tau(t) = tau0 - 2 C K0 t with blow-down time
/// t_star = tau0 / (2 C K0). The constant C is a config input, not a certified
/// estimate; t_star is a schedule parameter, not a proven existence time.
struct RadiusSchedule {
  double tau0 = 1.0;
  double C = 1.0;
  double K0 = 1.0;

  double t_star() const { return tau0 / (2.0 * C * K0); }
  double tau(double t) const { return tau0 - 2.0 * C * K0 * t; }
};

inline RadiusSchedule radius_schedule(double tau0, double C, double K0) {
  if (!(tau0 > 0.0 && C > 0.0 && K0 > 0.0))
    throw std::invalid_argument("radius_schedule: all inputs must be positive");
  return {tau0, C, K0};
}

}  // namespace asl
