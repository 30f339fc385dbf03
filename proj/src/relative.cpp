#include "mvca/relative.hpp"

namespace mvca {

Vec3 relative_state(const VehicleState& vi, const VehicleState& vj) {
  const double dx = vj.x - vi.x;
  const double dy = vj.y - vi.y;
  const double c = std::cos(vi.heading);
  const double s = std::sin(vi.heading);
  // Rot(-heading_i) applied to the position difference.
  return {c * dx + s * dy, -s * dx + c * dy,
          wrap_angle(vj.heading - vi.heading)};
}

Vec3 relative_dynamics(const Vec3& rel, double omega_i, double omega_j,
                       const DynamicsParams& params) {
  const double v = params.speed;
  return {-v + v * std::cos(rel[2]) + omega_i * rel[1],
          v * std::sin(rel[2]) - omega_i * rel[0], omega_j - omega_i};
}

}  // namespace mvca
