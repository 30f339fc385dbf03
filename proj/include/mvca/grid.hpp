#pragma once

#include <array>
#include <cstddef>

#include "mvca/types.hpp"

namespace mvca {

// Axis-aligned 3-D node grid over (p_x, p_y, theta).  Nodes are stored
// x-fastest, then y, then theta.  For a periodic axis the last node does not
// duplicate the first: spacing = span / dims; non-periodic spacing =
// span / (dims - 1).
struct Grid3 {
  std::array<int, 3> dims{};
  Vec3 min_corner{};
  Vec3 max_corner{};
  std::array<bool, 3> periodic{};
  Vec3 spacing{};

  // Validates bounds/dims and computes spacing.  Throws std::invalid_argument
  // on a degenerate axis or a periodic theta axis whose span is not 2*pi.
  static Grid3 make(const std::array<int, 3>& dims, const Vec3& min_corner,
                    const Vec3& max_corner,
                    const std::array<bool, 3>& periodic = {false, false, true});

  std::size_t size() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims[0]) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(k));
  }

  double coord(int axis, int node) const {
    return min_corner[axis] + spacing[axis] * node;
  }
};

// 61 x 61 x 60 over [-45,45]^2 x [0,2*pi), theta periodic.
Grid3 default_grid();

}  // namespace mvca
