#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <string>

#include "mvca/brs_file.hpp"
#include "mvca/grid.hpp"
#include "mvca/hj_solver.hpp"
#include "mvca/value_field.hpp"

namespace test_util {

// Field with values f(p_x, p_y, theta) evaluated at every node.
inline mvca::ValueField make_field(
    const mvca::Grid3& grid,
    const std::function<double(double, double, double)>& f) {
  mvca::ValueField field;
  field.grid = grid;
  field.values.resize(grid.size());
  for (int k = 0; k < grid.dims[2]; ++k) {
    for (int j = 0; j < grid.dims[1]; ++j) {
      for (int i = 0; i < grid.dims[0]; ++i) {
        field.values[grid.index(i, j, k)] =
            f(grid.coord(0, i), grid.coord(1, j), grid.coord(2, k));
      }
    }
  }
  return field;
}

inline mvca::Grid3 small_grid(int nx = 13, int ny = 13, int ntheta = 12,
                              double extent = 45.0) {
  return mvca::Grid3::make({nx, ny, ntheta}, {-extent, -extent, 0.0},
                           {extent, extent, mvca::kTwoPi});
}

// Converged value function shared by the test suite: the path computed by the
// build fixture when available, otherwise solved in process on the default
// grid (under a second of wall time).  Cached per process.
inline const mvca::ValueField& shared_brs() {
  static const mvca::ValueField field = [] {
    if (const char* path = std::getenv("MVCA_TEST_BRS")) {
      return mvca::load_brs(path);
    }
    mvca::ValueField f =
        mvca::signed_distance_cylinder(mvca::default_grid(), 5.0);
    mvca::solve_brs(f, mvca::DynamicsParams{});
    return f;
  }();
  return field;
}

}  // namespace test_util
