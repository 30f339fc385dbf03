#include "svg_render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace cli {

namespace {

constexpr double kCanvas = 820.0;  // square viewport, world box mapped inside
constexpr double kMargin = 30.0;

const char* const kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

const char* color_of(uint32_t vehicle) {
  return kPalette[vehicle % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// World-to-viewport transform; y flips because SVG grows downward.
struct Mapper {
  double xmin = 0, ymin = 0, scale = 1;

  double x(double wx) const { return kMargin + (wx - xmin) * scale; }
  double y(double wy, double span_y) const {
    return kMargin + (span_y - (wy - ymin)) * scale;
  }
};

struct Scene {
  std::string body;
  Mapper map;
  double span_y = 0;

  double X(double wx) const { return map.x(wx); }
  double Y(double wy) const { return map.y(wy, span_y); }

  void line(double x1, double y1, double x2, double y2, const char* color,
            double width) {
    body += "<line x1=\"" + fmt(X(x1)) + "\" y1=\"" + fmt(Y(y1)) + "\" x2=\"" +
            fmt(X(x2)) + "\" y2=\"" + fmt(Y(y2)) + "\" stroke=\"" + color +
            "\" stroke-width=\"" + fmt(width) + "\"/>\n";
  }

  void circle(double cx, double cy, double world_r, const char* stroke,
              double width, const char* dash, const char* fill) {
    body += "<circle cx=\"" + fmt(X(cx)) + "\" cy=\"" + fmt(Y(cy)) +
            "\" r=\"" + fmt(world_r * map.scale) + "\" stroke=\"" + stroke +
            "\" stroke-width=\"" + fmt(width) + "\" fill=\"" + fill + "\"";
    if (dash != nullptr) body += std::string(" stroke-dasharray=\"") + dash + "\"";
    body += "/>\n";
  }

  void polyline(const std::vector<std::array<double, 2>>& pts,
                const char* color, double width, const char* dash) {
    if (pts.size() < 2) return;
    body += "<polyline points=\"";
    for (const auto& p : pts) {
      body += fmt(X(p[0])) + "," + fmt(Y(p[1])) + " ";
    }
    body += "\" fill=\"none\" stroke=\"";
    body += color;
    body += "\" stroke-width=\"" + fmt(width) + "\"";
    if (dash != nullptr) body += std::string(" stroke-dasharray=\"") + dash + "\"";
    body += "/>\n";
  }

  // Isosceles triangle pointing along the heading, sized in world units.
  void vehicle_marker(double cx, double cy, double heading, const char* color) {
    const double len = 1.6, half = 0.9;
    const double c = std::cos(heading), s = std::sin(heading);
    const double nose_x = cx + len * c, nose_y = cy + len * s;
    const double bl_x = cx - half * s - 0.6 * len * c;
    const double bl_y = cy + half * c - 0.6 * len * s;
    const double br_x = cx + half * s - 0.6 * len * c;
    const double br_y = cy - half * c - 0.6 * len * s;
    body += "<polygon points=\"" + fmt(X(nose_x)) + "," + fmt(Y(nose_y)) + " " +
            fmt(X(bl_x)) + "," + fmt(Y(bl_y)) + " " + fmt(X(br_x)) + "," +
            fmt(Y(br_y)) + "\" fill=\"" + color + "\"/>\n";
  }

  void text(double px, double py, const std::string& s) {
    body += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(py) +
            "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#333\">" +
            s + "</text>\n";
  }
};

std::vector<std::array<double, 2>> contour_points(const mvca_contours* curves,
                                                  uint32_t index) {
  const uint32_t count = mvca_contours_size(curves, index);
  std::vector<double> xy(2 * count);
  std::vector<std::array<double, 2>> pts(count);
  if (count == 0) return pts;
  mvca_contours_points(curves, index, xy.data());
  for (uint32_t p = 0; p < count; ++p) pts[p] = {xy[2 * p], xy[2 * p + 1]};
  return pts;
}

}  // namespace

std::string render_scene(const mvca_field* field, const mvca_trace* trace,
                         double conflict_threshold,
                         std::optional<double> snapshot_time) {
  const uint32_t records = mvca_trace_records(trace);
  const uint32_t n = mvca_trace_vehicles(trace);
  if (records == 0 || n == 0) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>";

  mvca_params params{};
  mvca_field_params(field, &params);

  std::vector<std::vector<double>> states(records, std::vector<double>(4 * n));
  std::vector<std::vector<int32_t>> targets(records, std::vector<int32_t>(n));
  for (uint32_t r = 0; r < records; ++r) {
    mvca_trace_states(trace, r, states[r].data());
    mvca_trace_assignment(trace, r, targets[r].data());
  }
  std::vector<double> goals(2 * n);
  mvca_trace_goals(trace, goals.data());

  // Snapshot: requested time, or the record with the most active assignments.
  uint32_t snap = 0;
  if (snapshot_time.has_value()) {
    double best = std::numeric_limits<double>::infinity();
    for (uint32_t r = 0; r < records; ++r) {
      const double d = std::abs(mvca_trace_time(trace, r) - *snapshot_time);
      if (d < best) {
        best = d;
        snap = r;
      }
    }
  } else {
    int best = -1;
    for (uint32_t r = 0; r < records; ++r) {
      const int active = static_cast<int>(
          std::count_if(targets[r].begin(), targets[r].end(),
                        [](int32_t t) { return t >= 0; }));
      if (active > best) {
        best = active;
        snap = r;
      }
    }
  }

  // World bounding box over trajectories, goals, and snapshot danger circles.
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto grow = [&](double x, double y, double pad) {
    xmin = std::min(xmin, x - pad);
    xmax = std::max(xmax, x + pad);
    ymin = std::min(ymin, y - pad);
    ymax = std::max(ymax, y + pad);
  };
  for (uint32_t r = 0; r < records; ++r) {
    for (uint32_t i = 0; i < n; ++i) {
      grow(states[r][4 * i], states[r][4 * i + 1],
           r == snap ? params.capture_radius : 0.0);
    }
  }
  for (uint32_t i = 0; i < n; ++i) grow(goals[2 * i], goals[2 * i + 1], 2.0);
  const double span = std::max(xmax - xmin, ymax - ymin);
  const double pad = 0.05 * span;
  xmin -= pad;
  ymin -= pad;

  Scene sc;
  sc.span_y = span + 2 * pad;
  sc.map = {xmin, ymin, (kCanvas - 2 * kMargin) / (span + 2 * pad)};

  std::string head =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
      fmt(kCanvas) + "\" height=\"" + fmt(kCanvas) + "\" viewBox=\"0 0 " +
      fmt(kCanvas) + " " + fmt(kCanvas) + "\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Goals first so everything else draws on top.
  for (uint32_t i = 0; i < n; ++i) {
    sc.circle(goals[2 * i], goals[2 * i + 1], 1.0, color_of(i), 1.0, "3,3",
              "none");
    const double gx = goals[2 * i], gy = goals[2 * i + 1];
    sc.line(gx - 0.7, gy - 0.7, gx + 0.7, gy + 0.7, color_of(i), 1.0);
    sc.line(gx - 0.7, gy + 0.7, gx + 0.7, gy - 0.7, color_of(i), 1.0);
  }

  // Trajectories plus start markers.
  for (uint32_t i = 0; i < n; ++i) {
    std::vector<std::array<double, 2>> path(records);
    for (uint32_t r = 0; r < records; ++r) {
      path[r] = {states[r][4 * i], states[r][4 * i + 1]};
    }
    sc.polyline(path, color_of(i), 1.5, nullptr);
    sc.circle(path[0][0], path[0][1], 0.45, color_of(i), 1.0, nullptr,
              color_of(i));
  }

  // Level sets of the snapshot's avoidance pairs, drawn in the avoiding
  // vehicle's color: solid at 0, dashed at the conflict threshold.
  for (uint32_t i = 0; i < n; ++i) {
    const int32_t j = targets[snap][i];
    if (j < 0) continue;
    const double xi = states[snap][4 * i], yi = states[snap][4 * i + 1];
    const double hi = states[snap][4 * i + 2];
    const double hj = states[snap][4 * j + 2];
    const double c = std::cos(hi), s = std::sin(hi);
    for (double level : {0.0, conflict_threshold}) {
      mvca_contours* curves = nullptr;
      if (mvca_level_set_slice(field, hj - hi, level, &curves) != MVCA_OK) {
        continue;
      }
      for (uint32_t k = 0; k < mvca_contours_count(curves); ++k) {
        auto pts = contour_points(curves, k);
        for (auto& p : pts) {
          const double wx = xi + c * p[0] - s * p[1];
          const double wy = yi + s * p[0] + c * p[1];
          p = {wx, wy};
        }
        sc.polyline(pts, color_of(i), level == 0.0 ? 2.0 : 1.2,
                    level == 0.0 ? nullptr : "6,4");
      }
      mvca_contours_destroy(curves);
    }
  }

  // Snapshot poses: danger circle plus heading marker.
  for (uint32_t i = 0; i < n; ++i) {
    const double x = states[snap][4 * i], y = states[snap][4 * i + 1];
    const double h = states[snap][4 * i + 2];
    const bool reached = states[snap][4 * i + 3] > 0.5;
    if (!reached) {
      sc.circle(x, y, params.capture_radius, color_of(i), 0.8, "2,2", "none");
    }
    sc.vehicle_marker(x, y, h, color_of(i));
  }

  sc.text(kMargin, kMargin - 10.0,
          "t = " + fmt(mvca_trace_time(trace, snap)) + " s, " +
              std::to_string(n) + " vehicles");

  return head + sc.body + "</svg>\n";
}

}  // namespace cli
