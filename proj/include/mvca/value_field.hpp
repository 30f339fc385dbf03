#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "mvca/grid.hpp"
#include "mvca/types.hpp"

namespace mvca {

// Gridded value function over relative state (p_x, p_y, theta).  After a
// reachability solve, {V <= 0} is the pairwise capture region and V acts as
// the safety level between a vehicle pair.
struct ValueField {
  Grid3 grid;
  std::vector<double> values;   // grid.size() doubles, x-fastest
  bool converged = false;
  double residual = std::numeric_limits<double>::infinity();
  DynamicsParams dynamics{};    // recorded by the solver / file loader
  double capture_radius = 0.0;  // recorded at initialization
};

// V_0(x) = sqrt(p_x^2 + p_y^2) - capture_radius at every node, independent of
// theta.  Negative exactly inside the capture cylinder.
ValueField signed_distance_cylinder(const Grid3& grid, double capture_radius);

// Trilinear interpolation; theta wraps periodically.  Empty when (p_x, p_y)
// falls outside the grid bounds.  Exact at nodes.
std::optional<double> sample_value(const ValueField& field, const Vec3& state);

// Gradient by central differences at nodes (one-sided on non-periodic faces),
// the three components trilinearly interpolated.  Empty out of bounds.
std::optional<Vec3> sample_gradient(const ValueField& field, const Vec3& state);

}  // namespace mvca
