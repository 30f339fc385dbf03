#include "mvca/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace mvca {

namespace {

// A crossing lives on a unique grid edge; keying points by edge makes the
// chaining exact (no floating-point matching).
std::int64_t edge_key(int nx, int i, int j, bool vertical) {
  return (static_cast<std::int64_t>(j) * nx + i) * 2 + (vertical ? 1 : 0);
}

}  // namespace

std::vector<Polyline> level_set_slice(const ValueField& field, double theta,
                                      double level) {
  const Grid3& g = field.grid;
  const int nx = g.dims[0];
  const int ny = g.dims[1];
  const int nth = g.dims[2];

  // Bilinear slice at the requested relative heading.
  double u = wrap_angle(theta - g.min_corner[2]) / g.spacing[2];
  int k0 = static_cast<int>(std::floor(u));
  double f = u - k0;
  if (k0 >= nth) {
    k0 = 0;
    f = 0.0;
  }
  const int k1 = (k0 + 1) % nth;
  std::vector<double> w(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      w[static_cast<std::size_t>(j) * nx + i] =
          (1.0 - f) * field.values[g.index(i, j, k0)] +
          f * field.values[g.index(i, j, k1)];
    }
  }
  auto at = [&](int i, int j) { return w[static_cast<std::size_t>(j) * nx + i]; };
  auto inside = [&](double v) { return v < level; };

  std::unordered_map<std::int64_t, int> edge_point;
  std::vector<std::array<double, 2>> points;
  auto point_on = [&](int i, int j, bool vertical) {
    const std::int64_t key = edge_key(nx, i, j, vertical);
    if (auto it = edge_point.find(key); it != edge_point.end()) {
      return it->second;
    }
    const double va = at(i, j);
    const double vb = vertical ? at(i, j + 1) : at(i + 1, j);
    const double t = (level - va) / (vb - va);
    points.push_back({g.coord(0, i) + (vertical ? 0.0 : t * g.spacing[0]),
                      g.coord(1, j) + (vertical ? t * g.spacing[1] : 0.0)});
    const int idx = static_cast<int>(points.size()) - 1;
    edge_point.emplace(key, idx);
    return idx;
  };

  // Cell edges in marching-squares order: bottom, right, top, left.
  struct Edge {
    int i, j;
    bool vertical;
  };
  std::vector<std::array<int, 2>> segments;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const double v00 = at(i, j), v10 = at(i + 1, j);
      const double v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
      const bool b0 = inside(v00), b1 = inside(v10);
      const bool b2 = inside(v11), b3 = inside(v01);
      const Edge edges[4] = {{i, j, false},
                             {i + 1, j, true},
                             {i, j + 1, false},
                             {i, j, true}};
      const bool crossed[4] = {b0 != b1, b1 != b2, b3 != b2, b0 != b3};
      int hit[4];
      int count = 0;
      for (int e = 0; e < 4; ++e) {
        if (crossed[e]) hit[count++] = e;
      }
      auto emit = [&](int ea, int eb) {
        segments.push_back(
            {point_on(edges[ea].i, edges[ea].j, edges[ea].vertical),
             point_on(edges[eb].i, edges[eb].j, edges[eb].vertical)});
      };
      if (count == 2) {
        emit(hit[0], hit[1]);
      } else if (count == 4) {
        // Saddle: resolve by the cell-center average.
        const bool center = inside(0.25 * (v00 + v10 + v01 + v11));
        const bool diag02 = b0;  // inside corners on the 00-11 diagonal
        if (diag02 == center) {
          emit(0, 1);  // bottom-right corner loop
          emit(2, 3);  // top-left corner loop
        } else {
          emit(0, 3);  // bottom-left
          emit(1, 2);  // top-right
        }
      }
    }
  }

  // Chain segments into polylines; every point touches at most two segments.
  std::vector<std::vector<int>> incident(points.size());
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    incident[segments[s][0]].push_back(s);
    incident[segments[s][1]].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> polylines;
  auto next_seg = [&](int point, int from) {
    for (int s : incident[point]) {
      if (s != from && !used[s]) return s;
    }
    return -1;
  };
  for (int s0 = 0; s0 < static_cast<int>(segments.size()); ++s0) {
    if (used[s0]) continue;
    used[s0] = true;
    std::vector<int> ids = {segments[s0][0], segments[s0][1]};
    int cur = ids.back(), via = s0;
    while (true) {
      const int ns = next_seg(cur, via);
      if (ns < 0) break;
      used[ns] = true;
      cur = segments[ns][0] == cur ? segments[ns][1] : segments[ns][0];
      ids.push_back(cur);
      via = ns;
      if (cur == ids.front()) break;  // closed loop, first id repeated
    }
    if (ids.front() != ids.back()) {
      // Open chain: extend from the other end as well.
      std::vector<int> head;
      cur = ids.front();
      via = s0;
      while (true) {
        const int ns = next_seg(cur, via);
        if (ns < 0) break;
        used[ns] = true;
        cur = segments[ns][0] == cur ? segments[ns][1] : segments[ns][0];
        head.push_back(cur);
        via = ns;
      }
      std::reverse(head.begin(), head.end());
      head.insert(head.end(), ids.begin(), ids.end());
      ids = std::move(head);
    }
    Polyline line;
    line.reserve(ids.size());
    for (int id : ids) line.push_back(points[id]);
    polylines.push_back(std::move(line));
  }
  return polylines;
}

}  // namespace mvca
