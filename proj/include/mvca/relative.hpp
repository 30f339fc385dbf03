#pragma once

#include "mvca/types.hpp"

namespace mvca {

// State of vehicle j expressed in the body frame of vehicle i:
//   (p_x, p_y) = Rot(-heading_i) * (pos_j - pos_i),  theta = heading_j - heading_i
// with theta wrapped to [0, 2*pi).  p_x points along i's heading.
Vec3 relative_state(const VehicleState& vi, const VehicleState& vj);

// Time derivative of the relative state for turn rates (omega_i, omega_j):
//   p_x' = -v + v*cos(theta) + omega_i * p_y
//   p_y' =      v*sin(theta) - omega_i * p_x
//   theta' = omega_j - omega_i
Vec3 relative_dynamics(const Vec3& rel, double omega_i, double omega_j,
                       const DynamicsParams& params);

}  // namespace mvca
