#include "mvca/value_field.hpp"

#include <cmath>

namespace mvca {

namespace {

struct AxisLoc {
  int i0 = 0;
  int i1 = 0;
  double f = 0.0;
};

// Cell and fractional offset along a non-periodic axis; empty out of bounds.
std::optional<AxisLoc> locate(const Grid3& g, int axis, double v) {
  if (v < g.min_corner[axis] || v > g.max_corner[axis]) return std::nullopt;
  double u = (v - g.min_corner[axis]) / g.spacing[axis];
  int i0 = static_cast<int>(std::floor(u));
  if (i0 > g.dims[axis] - 2) i0 = g.dims[axis] - 2;  // v == max, or rounding
  if (i0 < 0) i0 = 0;
  return AxisLoc{i0, i0 + 1, u - i0};
}

AxisLoc locate_periodic(const Grid3& g, int axis, double v) {
  double u = wrap_angle(v - g.min_corner[axis]) / g.spacing[axis];
  int n = g.dims[axis];
  int i0 = static_cast<int>(std::floor(u));
  double f = u - i0;
  if (i0 >= n) {  // wrap_angle rounding right at the seam
    i0 = 0;
    f = 0.0;
  }
  return AxisLoc{i0, (i0 + 1) % n, f};
}

struct CellLoc {
  AxisLoc x, y, t;
};

std::optional<CellLoc> locate_cell(const Grid3& g, const Vec3& state) {
  auto lx = locate(g, 0, state[0]);
  auto ly = locate(g, 1, state[1]);
  if (!lx || !ly) return std::nullopt;
  return CellLoc{*lx, *ly, locate_periodic(g, 2, state[2])};
}

// Trilinear blend of per-corner samples provided by `corner(i, j, k)`.
template <typename F>
auto blend(const CellLoc& c, F&& corner) {
  auto lerp = [](auto a, auto b, double f) { return a + (b - a) * f; };
  auto c00 = lerp(corner(c.x.i0, c.y.i0, c.t.i0), corner(c.x.i1, c.y.i0, c.t.i0), c.x.f);
  auto c10 = lerp(corner(c.x.i0, c.y.i1, c.t.i0), corner(c.x.i1, c.y.i1, c.t.i0), c.x.f);
  auto c01 = lerp(corner(c.x.i0, c.y.i0, c.t.i1), corner(c.x.i1, c.y.i0, c.t.i1), c.x.f);
  auto c11 = lerp(corner(c.x.i0, c.y.i1, c.t.i1), corner(c.x.i1, c.y.i1, c.t.i1), c.x.f);
  return lerp(lerp(c00, c10, c.y.f), lerp(c01, c11, c.y.f), c.t.f);
}

// Central-difference gradient component at a node; one-sided on the
// non-periodic x/y faces, wrapped on theta.
double node_gradient(const ValueField& fld, int axis, int i, int j, int k) {
  const Grid3& g = fld.grid;
  double h = g.spacing[axis];
  auto v = [&](int ii, int jj, int kk) { return fld.values[g.index(ii, jj, kk)]; };
  int idx[3] = {i, j, k};
  int n = g.dims[axis];
  if (axis == 2) {
    int up = (k + 1) % n;
    int dn = (k + n - 1) % n;
    return (v(i, j, up) - v(i, j, dn)) / (2.0 * h);
  }
  if (idx[axis] == 0) {
    return axis == 0 ? (v(1, j, k) - v(0, j, k)) / h
                     : (v(i, 1, k) - v(i, 0, k)) / h;
  }
  if (idx[axis] == n - 1) {
    return axis == 0 ? (v(n - 1, j, k) - v(n - 2, j, k)) / h
                     : (v(i, n - 1, k) - v(i, n - 2, k)) / h;
  }
  return axis == 0 ? (v(i + 1, j, k) - v(i - 1, j, k)) / (2.0 * h)
                   : (v(i, j + 1, k) - v(i, j - 1, k)) / (2.0 * h);
}

}  // namespace

ValueField signed_distance_cylinder(const Grid3& grid, double capture_radius) {
  ValueField f;
  f.grid = grid;
  f.capture_radius = capture_radius;
  f.values.resize(grid.size());
  for (int k = 0; k < grid.dims[2]; ++k) {
    for (int j = 0; j < grid.dims[1]; ++j) {
      double y = grid.coord(1, j);
      for (int i = 0; i < grid.dims[0]; ++i) {
        double x = grid.coord(0, i);
        f.values[grid.index(i, j, k)] = std::hypot(x, y) - capture_radius;
      }
    }
  }
  return f;
}

std::optional<double> sample_value(const ValueField& field, const Vec3& state) {
  auto cell = locate_cell(field.grid, state);
  if (!cell) return std::nullopt;
  return blend(*cell, [&](int i, int j, int k) {
    return field.values[field.grid.index(i, j, k)];
  });
}

std::optional<Vec3> sample_gradient(const ValueField& field, const Vec3& state) {
  auto cell = locate_cell(field.grid, state);
  if (!cell) return std::nullopt;
  Vec3 out;
  for (int axis = 0; axis < 3; ++axis) {
    out[axis] = blend(*cell, [&](int i, int j, int k) {
      return node_gradient(field, axis, i, j, k);
    });
  }
  return out;
}

}  // namespace mvca
