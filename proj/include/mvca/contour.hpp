#pragma once

#include <array>
#include <vector>

#include "mvca/value_field.hpp"

namespace mvca {

using Polyline = std::vector<std::array<double, 2>>;

// Iso-contour of the value function restricted to one relative heading:
// marching squares on the bilinear (p_x, p_y) slice at theta (interpolated
// between the bracketing grid planes).  Polylines are chained from the cell
// segments; a level outside the slice's range yields no curves.
std::vector<Polyline> level_set_slice(const ValueField& field, double theta,
                                      double level);

}  // namespace mvca
