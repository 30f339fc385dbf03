#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace mvca {

using Vec3 = std::array<double, 3>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Planar pose plus a latched arrival flag.  heading is kept in [0, 2*pi).
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  bool reached = false;
};

// Shared vehicle kinematics: constant forward speed, bounded turn rate.
struct DynamicsParams {
  double speed = 5.0;
  double max_turn_rate = 1.0;
};

// Wrap to [0, 2*pi).
inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  return r < 0.0 ? r + kTwoPi : r;
}

// Wrap to (-pi, pi].  wrap_signed(pi) == +pi.
inline double wrap_signed(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r > kPi) {
    r -= kTwoPi;
  } else if (r <= -kPi) {
    r += kTwoPi;
  }
  return r;
}

}  // namespace mvca
