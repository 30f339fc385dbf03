#include "mvca/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mvca/defaults.hpp"

namespace mvca {

Grid3 Grid3::make(const std::array<int, 3>& dims, const Vec3& min_corner,
                  const Vec3& max_corner, const std::array<bool, 3>& periodic) {
  Grid3 g;
  g.dims = dims;
  g.min_corner = min_corner;
  g.max_corner = max_corner;
  g.periodic = periodic;
  for (int a = 0; a < 3; ++a) {
    double span = max_corner[a] - min_corner[a];
    if (!(span > 0.0)) {
      throw std::invalid_argument("grid axis " + std::to_string(a) +
                                  ": max must exceed min");
    }
    int min_nodes = periodic[a] ? 3 : 2;
    if (dims[a] < min_nodes) {
      throw std::invalid_argument("grid axis " + std::to_string(a) +
                                  ": too few nodes");
    }
    g.spacing[a] = periodic[a] ? span / dims[a] : span / (dims[a] - 1);
  }
  if (g.periodic[2] && std::abs((max_corner[2] - min_corner[2]) - kTwoPi) >
                           1e-9 * kTwoPi) {
    throw std::invalid_argument("periodic theta axis must span 2*pi");
  }
  return g;
}

Grid3 default_grid() {
  using namespace defaults;
  return Grid3::make({grid_nx, grid_ny, grid_ntheta},
                     {-grid_extent, -grid_extent, 0.0},
                     {grid_extent, grid_extent, kTwoPi});
}

}  // namespace mvca
