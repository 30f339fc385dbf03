// C surface over the core library: opaque handles, status codes, no
// exceptions across the boundary.

#include "mvca.h"

#include <algorithm>
#include <cstring>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>

#include "mvca/brs_file.hpp"
#include "mvca/contour.hpp"
#include "mvca/coordination.hpp"
#include "mvca/hj_solver.hpp"
#include "mvca/relative.hpp"
#include "mvca/safety.hpp"
#include "mvca/simulate.hpp"
#include "mvca/theorems.hpp"

struct mvca_field {
  mvca::ValueField field;
};

struct mvca_trace {
  mvca::Trace trace;
};

struct mvca_contours {
  std::vector<mvca::Polyline> curves;
};

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Runs fn() and maps escaping exceptions onto status codes.
template <typename Fn>
mvca_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const mvca::FormatError&) {
    return MVCA_ERR_FORMAT;
  } catch (const mvca::IoError&) {
    return MVCA_ERR_IO;
  } catch (const std::domain_error&) {
    return MVCA_ERR_OUT_OF_BOUNDS;
  } catch (const std::invalid_argument&) {
    return MVCA_ERR_INVALID_ARGUMENT;
  } catch (...) {
    return MVCA_ERR_INTERNAL;
  }
}

mvca::VehicleState pose_state(const double pose[3]) {
  return {pose[0], pose[1], pose[2], false};
}

bool valid_dim(uint32_t d) { return d >= 2 && d <= 4096; }

mvca_status check_square(uint32_t n) {
  return (n >= 2 && n <= 16) ? MVCA_OK : MVCA_ERR_INVALID_ARGUMENT;
}

mvca::RewardMatrix unpack_rewards(uint32_t n, const double* rewards,
                                  const uint8_t* neg_inf) {
  mvca::RewardMatrix m = mvca::RewardMatrix::make(static_cast<int>(n));
  for (std::size_t c = 0; c < static_cast<std::size_t>(n) * n; ++c) {
    m.cells[c] = neg_inf[c] ? mvca::Reward::neg_inf()
                            : mvca::Reward::finite(rewards[c]);
  }
  return m;
}

mvca_status map_method(int32_t raw, mvca::Method& out) {
  switch (raw) {
    case MVCA_METHOD_MIP: out = mvca::Method::kMip; return MVCA_OK;
    case MVCA_METHOD_SAMV: out = mvca::Method::kSamv; return MVCA_OK;
    case MVCA_METHOD_BASELINE: out = mvca::Method::kBaseline; return MVCA_OK;
    default: return MVCA_ERR_INVALID_ARGUMENT;
  }
}

mvca::ScenarioParams scenario_params(const mvca::ValueField& field,
                                     const mvca_scenario_spec& spec) {
  mvca::ScenarioParams p;
  p.dynamics = field.dynamics;
  p.capture_radius = field.capture_radius;
  p.conflict_threshold = spec.conflict_threshold;
  p.goal_radius = spec.goal_radius;
  p.position_jitter = spec.position_jitter;
  p.heading_jitter = spec.heading_jitter;
  return p;
}

bool valid_scenario_spec(const mvca_scenario_spec& spec) {
  return spec.conflict_threshold > 0.0 && spec.goal_radius > 0.0 &&
         spec.position_jitter >= 0.0 && spec.heading_jitter >= 0.0;
}

void copy_report(const std::string& text, char* report, size_t capacity) {
  if (report == nullptr || capacity == 0) return;
  const size_t len = std::min(text.size(), capacity - 1);
  std::memcpy(report, text.data(), len);
  report[len] = '\0';
}

}  // namespace

extern "C" {

const char* mvca_status_name(mvca_status status) {
  switch (status) {
    case MVCA_OK: return "ok";
    case MVCA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MVCA_ERR_IO: return "io error";
    case MVCA_ERR_FORMAT: return "format error";
    case MVCA_ERR_NOT_CONVERGED: return "not converged";
    case MVCA_ERR_VERIFICATION_FAILED: return "verification failed";
    case MVCA_ERR_OUT_OF_BOUNDS: return "out of bounds";
    case MVCA_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* mvca_version(void) { return "1.0.0"; }

mvca_status mvca_field_create(const mvca_grid_spec* grid,
                              const mvca_params* params, mvca_field** out) {
  if (grid == nullptr || params == nullptr || out == nullptr) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  if (!valid_dim(grid->nx) || !valid_dim(grid->ny) || !valid_dim(grid->ntheta)) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  if (!(params->speed > 0.0) || !(params->max_turn_rate > 0.0) ||
      !(params->capture_radius > 0.0)) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    mvca::Grid3 g = mvca::Grid3::make(
        {static_cast<int>(grid->nx), static_cast<int>(grid->ny),
         static_cast<int>(grid->ntheta)},
        {grid->xmin, grid->ymin, 0.0}, {grid->xmax, grid->ymax, mvca::kTwoPi});
    auto* handle = new mvca_field{
        mvca::signed_distance_cylinder(g, params->capture_radius)};
    handle->field.dynamics = {params->speed, params->max_turn_rate};
    *out = handle;
    return MVCA_OK;
  });
}

mvca_status mvca_field_solve(mvca_field* field, double tolerance,
                             uint32_t max_iterations, int workers,
                             mvca_progress_fn progress, void* user) {
  if (field == nullptr || !(tolerance > 0.0) || max_iterations == 0) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    mvca::SolveOptions options;
    options.tolerance = tolerance;
    options.max_iterations = static_cast<int>(
        std::min<uint32_t>(max_iterations, std::numeric_limits<int>::max()));
    options.workers = workers;
    if (progress != nullptr) {
      options.progress = [progress, user](int sweep, double residual) {
        progress(static_cast<uint32_t>(sweep), residual, user);
      };
    }
    mvca::SolveStats stats =
        mvca::solve_brs(field->field, field->field.dynamics, options);
    return stats.converged ? MVCA_OK : MVCA_ERR_NOT_CONVERGED;
  });
}

mvca_status mvca_field_save(const mvca_field* field, const char* path) {
  if (field == nullptr || path == nullptr) return MVCA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    mvca::save_brs(field->field, path);
    return MVCA_OK;
  });
}

mvca_status mvca_field_load(const char* path, mvca_field** out) {
  if (path == nullptr || out == nullptr) return MVCA_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    *out = new mvca_field{mvca::load_brs(path)};
    return MVCA_OK;
  });
}

void mvca_field_destroy(mvca_field* field) { delete field; }

int mvca_field_converged(const mvca_field* field) {
  return field != nullptr && field->field.converged ? 1 : 0;
}

double mvca_field_residual(const mvca_field* field) {
  return field != nullptr ? field->field.residual : kNan;
}

void mvca_field_grid(const mvca_field* field, mvca_grid_spec* out) {
  if (field == nullptr || out == nullptr) return;
  const mvca::Grid3& g = field->field.grid;
  out->nx = static_cast<uint32_t>(g.dims[0]);
  out->ny = static_cast<uint32_t>(g.dims[1]);
  out->ntheta = static_cast<uint32_t>(g.dims[2]);
  out->xmin = g.min_corner[0];
  out->xmax = g.max_corner[0];
  out->ymin = g.min_corner[1];
  out->ymax = g.max_corner[1];
}

void mvca_field_params(const mvca_field* field, mvca_params* out) {
  if (field == nullptr || out == nullptr) return;
  out->speed = field->field.dynamics.speed;
  out->max_turn_rate = field->field.dynamics.max_turn_rate;
  out->capture_radius = field->field.capture_radius;
}

mvca_status mvca_field_value(const mvca_field* field, double px, double py,
                             double theta, double* out) {
  if (field == nullptr || out == nullptr) return MVCA_ERR_INVALID_ARGUMENT;
  auto v = mvca::sample_value(field->field, {px, py, theta});
  if (!v) return MVCA_ERR_OUT_OF_BOUNDS;
  *out = *v;
  return MVCA_OK;
}

mvca_status mvca_field_gradient(const mvca_field* field, double px, double py,
                                double theta, double out[3]) {
  if (field == nullptr || out == nullptr) return MVCA_ERR_INVALID_ARGUMENT;
  auto g = mvca::sample_gradient(field->field, {px, py, theta});
  if (!g) return MVCA_ERR_OUT_OF_BOUNDS;
  std::copy(g->begin(), g->end(), out);
  return MVCA_OK;
}

void mvca_relative_state(const double pose_i[3], const double pose_j[3],
                         double out[3]) {
  if (pose_i == nullptr || pose_j == nullptr || out == nullptr) return;
  mvca::Vec3 rel = mvca::relative_state(pose_state(pose_i), pose_state(pose_j));
  std::copy(rel.begin(), rel.end(), out);
}

mvca_status mvca_safety_level(const mvca_field* field, const double pose_i[3],
                              const double pose_j[3], double* out) {
  if (field == nullptr || pose_i == nullptr || pose_j == nullptr ||
      out == nullptr) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  *out = mvca::safety_level(field->field, pose_state(pose_i), pose_state(pose_j));
  return MVCA_OK;
}

mvca_status mvca_avoid_control(const mvca_field* field, const double pose_i[3],
                               const double pose_j[3], double* out) {
  if (field == nullptr || pose_i == nullptr || pose_j == nullptr ||
      out == nullptr) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = mvca::avoid_control(field->field, pose_state(pose_i),
                               pose_state(pose_j));
    return MVCA_OK;
  });
}

mvca_status mvca_priority_matrix(uint32_t n, int32_t* out) {
  if (mvca_status s = check_square(n); s != MVCA_OK) return s;
  if (out == nullptr) return MVCA_ERR_INVALID_ARGUMENT;
  mvca::PriorityMatrix p = mvca::priority_matrix(static_cast<int>(n));
  std::copy(p.cells.begin(), p.cells.end(), out);
  return MVCA_OK;
}

mvca_status mvca_reward_matrix(uint32_t n, const double* safety,
                               double threshold, double* rewards,
                               uint8_t* neg_inf) {
  if (mvca_status s = check_square(n); s != MVCA_OK) return s;
  if (safety == nullptr || rewards == nullptr || neg_inf == nullptr) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  std::vector<double> sv(safety, safety + static_cast<std::size_t>(n) * n);
  mvca::RewardMatrix m = mvca::build_reward_matrix(
      mvca::priority_matrix(static_cast<int>(n)), sv, threshold);
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    neg_inf[c] = m.cells[c].is_neg_inf() ? 1 : 0;
    rewards[c] = m.cells[c].is_neg_inf() ? 0.0 : m.cells[c].value();
  }
  return MVCA_OK;
}

mvca_status mvca_solve_assignment(uint32_t n, const double* rewards,
                                  const uint8_t* neg_inf, uint32_t n_extra,
                                  const int32_t* extra, uint8_t* assignment,
                                  double* objective) {
  if (mvca_status s = check_square(n); s != MVCA_OK) return s;
  if (rewards == nullptr || neg_inf == nullptr || assignment == nullptr ||
      objective == nullptr || (n_extra > 0 && extra == nullptr)) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    mvca::MipInstance instance{unpack_rewards(n, rewards, neg_inf), {}};
    for (uint32_t e = 0; e < n_extra; ++e) {
      const int32_t* q = extra + 4 * e;
      instance.extra.push_back(
          {{static_cast<int>(q[0]), static_cast<int>(q[1])},
           {static_cast<int>(q[2]), static_cast<int>(q[3])}});
    }
    mvca::MipSolution sol = mvca::solve_mip(instance);
    std::copy(sol.assignment.u.begin(), sol.assignment.u.end(), assignment);
    *objective = sol.objective;
    return MVCA_OK;
  });
}

mvca_status mvca_baseline_assignment(uint32_t n, const double* safety,
                                     double threshold, uint8_t* assignment) {
  if (mvca_status s = check_square(n); s != MVCA_OK) return s;
  if (safety == nullptr || assignment == nullptr) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::vector<double> sv(safety, safety + static_cast<std::size_t>(n) * n);
    mvca::ControlLogic logic =
        mvca::baseline_assignment(sv, static_cast<int>(n), threshold);
    std::copy(logic.u.begin(), logic.u.end(), assignment);
    return MVCA_OK;
  });
}

mvca_status mvca_verify(const char* which, char* report, size_t capacity) {
  if (which == nullptr) return MVCA_ERR_INVALID_ARGUMENT;
  const std::string name = which;
  return guarded([&]() -> mvca_status {
    mvca::VerificationReport result;
    if (name == "theorem1") {
      result = mvca::verify_theorem1();
    } else if (name == "theorem2") {
      result = mvca::verify_theorem2();
    } else if (name == "mip-oracle") {
      result = mvca::verify_mip_against_enumeration();
    } else {
      return MVCA_ERR_INVALID_ARGUMENT;
    }
    copy_report(result.to_text(), report, capacity);
    return result.passed ? MVCA_OK : MVCA_ERR_VERIFICATION_FAILED;
  });
}

mvca_status mvca_simulate(const mvca_field* field,
                          const mvca_scenario_spec* spec, mvca_method method,
                          double dt, double t_max, mvca_trace** out) {
  if (field == nullptr || spec == nullptr || out == nullptr) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  if (!valid_scenario_spec(*spec)) return MVCA_ERR_INVALID_ARGUMENT;
  if (!field->field.converged) return MVCA_ERR_NOT_CONVERGED;
  mvca::Method m;
  if (mvca_status s = map_method(method, m); s != MVCA_OK) return s;
  return guarded([&] {
    mvca::Scenario sc =
        mvca::random_scenario(static_cast<int>(spec->n), spec->seed,
                              scenario_params(field->field, *spec));
    *out = new mvca_trace{mvca::run_scenario(field->field, sc, m, dt, t_max)};
    return MVCA_OK;
  });
}

void mvca_trace_destroy(mvca_trace* trace) { delete trace; }

uint32_t mvca_trace_records(const mvca_trace* trace) {
  return trace != nullptr ? static_cast<uint32_t>(trace->trace.records.size())
                          : 0;
}

uint32_t mvca_trace_vehicles(const mvca_trace* trace) {
  return trace != nullptr ? static_cast<uint32_t>(trace->trace.scenario.n) : 0;
}

double mvca_trace_time(const mvca_trace* trace, uint32_t record) {
  if (trace == nullptr || record >= trace->trace.records.size()) return kNan;
  return trace->trace.records[record].time;
}

mvca_status mvca_trace_states(const mvca_trace* trace, uint32_t record,
                              double* out) {
  if (trace == nullptr || out == nullptr ||
      record >= trace->trace.records.size()) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  const auto& states = trace->trace.records[record].states;
  for (std::size_t i = 0; i < states.size(); ++i) {
    out[4 * i + 0] = states[i].x;
    out[4 * i + 1] = states[i].y;
    out[4 * i + 2] = states[i].heading;
    out[4 * i + 3] = states[i].reached ? 1.0 : 0.0;
  }
  return MVCA_OK;
}

mvca_status mvca_trace_controls(const mvca_trace* trace, uint32_t record,
                                double* out) {
  if (trace == nullptr || out == nullptr ||
      record >= trace->trace.records.size()) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  const auto& controls = trace->trace.records[record].controls;
  std::copy(controls.begin(), controls.end(), out);
  return MVCA_OK;
}

mvca_status mvca_trace_assignment(const mvca_trace* trace, uint32_t record,
                                  int32_t* out) {
  if (trace == nullptr || out == nullptr ||
      record >= trace->trace.records.size()) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  const auto& targets = trace->trace.records[record].targets;
  std::copy(targets.begin(), targets.end(), out);
  return MVCA_OK;
}

void mvca_trace_goals(const mvca_trace* trace, double* out) {
  if (trace == nullptr || out == nullptr) return;
  const auto& targets = trace->trace.scenario.targets;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out[2 * i + 0] = targets[i][0];
    out[2 * i + 1] = targets[i][1];
  }
}

mvca_status mvca_trace_metrics(const mvca_trace* trace, double violation_radius,
                               mvca_metrics* out) {
  if (trace == nullptr || out == nullptr || !(violation_radius > 0.0)) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  mvca::Metrics m = mvca::compute_metrics(trace->trace, violation_radius);
  out->success_ratio = m.success_ratio;
  out->conflict_ratio = m.conflict_ratio;
  return MVCA_OK;
}

mvca_status mvca_trace_arrivals(const mvca_trace* trace, double* out) {
  if (trace == nullptr || out == nullptr) return MVCA_ERR_INVALID_ARGUMENT;
  mvca::Metrics m = mvca::compute_metrics(
      trace->trace, trace->trace.scenario.params.capture_radius);
  std::copy(m.arrival_times.begin(), m.arrival_times.end(), out);
  return MVCA_OK;
}

mvca_status mvca_batch(const mvca_field* field, const uint32_t* ns,
                       uint32_t n_count, const int32_t* methods,
                       uint32_t method_count, uint32_t trials,
                       uint64_t base_seed, const mvca_scenario_spec* proto,
                       double dt, double t_max, int workers,
                       mvca_batch_row* rows) {
  if (field == nullptr || ns == nullptr || n_count == 0 || methods == nullptr ||
      method_count == 0 || trials == 0 || proto == nullptr || rows == nullptr) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  if (!valid_scenario_spec(*proto)) return MVCA_ERR_INVALID_ARGUMENT;
  if (!field->field.converged) return MVCA_ERR_NOT_CONVERGED;
  std::vector<int> nv;
  for (uint32_t i = 0; i < n_count; ++i) nv.push_back(static_cast<int>(ns[i]));
  std::vector<mvca::Method> mv(method_count);
  for (uint32_t i = 0; i < method_count; ++i) {
    if (mvca_status s = map_method(methods[i], mv[i]); s != MVCA_OK) return s;
  }
  return guarded([&] {
    std::vector<mvca::BatchRow> result = mvca::batch_run(
        field->field, nv, mv, static_cast<int>(trials), base_seed,
        scenario_params(field->field, *proto), dt, t_max, workers);
    for (std::size_t r = 0; r < result.size(); ++r) {
      rows[r].n = static_cast<uint32_t>(result[r].n);
      rows[r].method = static_cast<int32_t>(result[r].method);
      rows[r].trials = static_cast<uint32_t>(result[r].trials);
      rows[r].mean_success = result[r].mean_success;
      rows[r].mean_conflict = result[r].mean_conflict;
    }
    return MVCA_OK;
  });
}

mvca_status mvca_level_set_slice(const mvca_field* field, double theta,
                                 double level, mvca_contours** out) {
  if (field == nullptr || out == nullptr) return MVCA_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    *out = new mvca_contours{mvca::level_set_slice(field->field, theta, level)};
    return MVCA_OK;
  });
}

void mvca_contours_destroy(mvca_contours* contours) { delete contours; }

uint32_t mvca_contours_count(const mvca_contours* contours) {
  return contours != nullptr ? static_cast<uint32_t>(contours->curves.size())
                             : 0;
}

uint32_t mvca_contours_size(const mvca_contours* contours, uint32_t index) {
  if (contours == nullptr || index >= contours->curves.size()) return 0;
  return static_cast<uint32_t>(contours->curves[index].size());
}

mvca_status mvca_contours_points(const mvca_contours* contours, uint32_t index,
                                 double* xy) {
  if (contours == nullptr || xy == nullptr || index >= contours->curves.size()) {
    return MVCA_ERR_INVALID_ARGUMENT;
  }
  const mvca::Polyline& line = contours->curves[index];
  for (std::size_t p = 0; p < line.size(); ++p) {
    xy[2 * p + 0] = line[p][0];
    xy[2 * p + 1] = line[p][1];
  }
  return MVCA_OK;
}

}  // extern "C"
