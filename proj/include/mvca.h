/* C interface to the multi-vehicle coordination library.
 *
 * The library computes a pairwise reachability value function for two
 * constant-speed, bounded-turn-rate vehicles, reads safety levels and
 * avoidance controls out of it, coordinates N vehicles by solving a small
 * binary assignment problem, and simulates closed-loop scenarios.
 *
 * All objects are opaque handles created and destroyed here; every fallible
 * call returns mvca_status.  Matrices are row-major.  Angles are radians.
 */
#ifndef MVCA_H
#define MVCA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mvca_status {
  MVCA_OK = 0,
  MVCA_ERR_INVALID_ARGUMENT = 1,
  MVCA_ERR_IO = 2,
  MVCA_ERR_FORMAT = 3,
  MVCA_ERR_NOT_CONVERGED = 4,
  MVCA_ERR_VERIFICATION_FAILED = 5,
  MVCA_ERR_OUT_OF_BOUNDS = 6,
  MVCA_ERR_INTERNAL = 7
} mvca_status;

const char* mvca_status_name(mvca_status status);
const char* mvca_version(void);

typedef struct mvca_field mvca_field;
typedef struct mvca_trace mvca_trace;
typedef struct mvca_contours mvca_contours;

/* Node grid over relative state (p_x, p_y, theta).  The theta axis is always
 * [0, 2*pi) and periodic. */
typedef struct mvca_grid_spec {
  uint32_t nx, ny, ntheta;
  double xmin, xmax, ymin, ymax;
} mvca_grid_spec;

typedef struct mvca_params {
  double speed;
  double max_turn_rate;
  double capture_radius;
} mvca_params;

/* ------------------------------------------------------------------ fields */

/* New field initialized to the signed distance of the capture cylinder. */
mvca_status mvca_field_create(const mvca_grid_spec* grid,
                              const mvca_params* params, mvca_field** out);

/* Runs reachability sweeps in place until the max pointwise change per sweep
 * drops below tolerance.  Returns MVCA_ERR_NOT_CONVERGED when the iteration
 * budget runs out first (values are still usable for inspection).  progress
 * may be NULL; workers 0 picks the hardware concurrency. */
typedef void (*mvca_progress_fn)(uint32_t sweep, double residual, void* user);
mvca_status mvca_field_solve(mvca_field* field, double tolerance,
                             uint32_t max_iterations, int workers,
                             mvca_progress_fn progress, void* user);

mvca_status mvca_field_save(const mvca_field* field, const char* path);
/* Loading re-derives the convergence flag with a diagnostic sweep. */
mvca_status mvca_field_load(const char* path, mvca_field** out);
void mvca_field_destroy(mvca_field* field);

int mvca_field_converged(const mvca_field* field);
double mvca_field_residual(const mvca_field* field);
void mvca_field_grid(const mvca_field* field, mvca_grid_spec* out);
void mvca_field_params(const mvca_field* field, mvca_params* out);

/* Trilinear sample; MVCA_ERR_OUT_OF_BOUNDS when (px, py) leaves the grid. */
mvca_status mvca_field_value(const mvca_field* field, double px, double py,
                             double theta, double* out);
mvca_status mvca_field_gradient(const mvca_field* field, double px, double py,
                                double theta, double out[3]);

/* --------------------------------------------------- pairwise safety reads */

/* Poses are (x, y, heading).  State of j in the body frame of i. */
void mvca_relative_state(const double pose_i[3], const double pose_j[3],
                         double out[3]);

/* Value at the relative state; +infinity when off-grid (far apart is safe). */
mvca_status mvca_safety_level(const mvca_field* field, const double pose_i[3],
                              const double pose_j[3], double* out);

/* Turn rate for i that maximizes the safety level growth against the worst
 * opponent; MVCA_ERR_OUT_OF_BOUNDS off-grid. */
mvca_status mvca_avoid_control(const mvca_field* field, const double pose_i[3],
                               const double pose_j[3], double* out);

/* ------------------------------------------------------------ coordination */

/* Fixed priority table: distinct 1..n*n-n off the diagonal, 0 on it. */
mvca_status mvca_priority_matrix(uint32_t n, int32_t* out);

/* rewards[i*n+j] = priority^2 when safety <= threshold else -1; the diagonal
 * is minus-infinity, reported through neg_inf (1 = minus-infinity). */
mvca_status mvca_reward_matrix(uint32_t n, const double* safety,
                               double threshold, double* rewards,
                               uint8_t* neg_inf);

/* Maximizes sum rewards[i][j] * u[i][j] subject to u[i][j] + u[j][i] <= 1, at
 * most one assignment per row, binary u, plus n_extra constraints
 * u[e0][e1] + u[e2][e3] <= 1 given as 4 indices each.  Deterministic
 * tie-break: lexicographically smallest flattened assignment. */
mvca_status mvca_solve_assignment(uint32_t n, const double* rewards,
                                  const uint8_t* neg_inf, uint32_t n_extra,
                                  const int32_t* extra, uint8_t* assignment,
                                  double* objective);

/* Uncoordinated reference: each row picks its least-safe conflicting column. */
mvca_status mvca_baseline_assignment(uint32_t n, const double* safety,
                                     double threshold, uint8_t* assignment);

/* Exhaustive checks: which is "theorem1", "theorem2" or "mip-oracle".
 * Returns MVCA_OK or MVCA_ERR_VERIFICATION_FAILED; the human-readable report
 * is copied into report (always NUL-terminated). */
mvca_status mvca_verify(const char* which, char* report, size_t capacity);

/* -------------------------------------------------------------- simulation */

typedef enum mvca_method {
  MVCA_METHOD_MIP = 0,
  MVCA_METHOD_SAMV = 1,
  MVCA_METHOD_BASELINE = 2
} mvca_method;

typedef struct mvca_scenario_spec {
  uint32_t n;
  uint64_t seed;
  double conflict_threshold;
  double goal_radius;
  double position_jitter;
  double heading_jitter;
} mvca_scenario_spec;

/* Runs one random circular-exchange scenario against the field (vehicles on
 * a circle, antipodal targets, seeded perturbations).  Dynamics and capture
 * radius come from the field. */
mvca_status mvca_simulate(const mvca_field* field,
                          const mvca_scenario_spec* spec, mvca_method method,
                          double dt, double t_max, mvca_trace** out);
void mvca_trace_destroy(mvca_trace* trace);

uint32_t mvca_trace_records(const mvca_trace* trace);
uint32_t mvca_trace_vehicles(const mvca_trace* trace);
double mvca_trace_time(const mvca_trace* trace, uint32_t record);
/* Per vehicle: x, y, heading, reached (0/1) -> 4 doubles each. */
mvca_status mvca_trace_states(const mvca_trace* trace, uint32_t record,
                              double* out);
mvca_status mvca_trace_controls(const mvca_trace* trace, uint32_t record,
                                double* out);
/* Avoidance assignment per vehicle (-1 when none). */
mvca_status mvca_trace_assignment(const mvca_trace* trace, uint32_t record,
                                  int32_t* out);
/* Scenario goal positions, n * 2 doubles. */
void mvca_trace_goals(const mvca_trace* trace, double* out);

typedef struct mvca_metrics {
  double success_ratio;
  double conflict_ratio;
} mvca_metrics;

/* Success: reached the goal without ever being within violation_radius of
 * another active vehicle.  Conflict ratio: violating pairs per step per pair. */
mvca_status mvca_trace_metrics(const mvca_trace* trace, double violation_radius,
                               mvca_metrics* out);
/* Arrival time per vehicle, -1 when the goal was never reached. */
mvca_status mvca_trace_arrivals(const mvca_trace* trace, double* out);

typedef struct mvca_batch_row {
  uint32_t n;
  int32_t method;
  uint32_t trials;
  double mean_success;
  double mean_conflict;
} mvca_batch_row;

/* Paired batch: trial t of size n uses one seed shared across methods.  rows
 * must hold n_count * method_count entries (n-major, then method).
 * Deterministic in base_seed regardless of workers. */
mvca_status mvca_batch(const mvca_field* field, const uint32_t* ns,
                       uint32_t n_count, const int32_t* methods,
                       uint32_t method_count, uint32_t trials,
                       uint64_t base_seed, const mvca_scenario_spec* proto,
                       double dt, double t_max, int workers,
                       mvca_batch_row* rows);

/* ----------------------------------------------------------------- contours */

/* Iso-contour of the value slice at one relative heading. */
mvca_status mvca_level_set_slice(const mvca_field* field, double theta,
                                 double level, mvca_contours** out);
void mvca_contours_destroy(mvca_contours* contours);
uint32_t mvca_contours_count(const mvca_contours* contours);
uint32_t mvca_contours_size(const mvca_contours* contours, uint32_t index);
/* Copies 2 * size doubles (x, y interleaved). */
mvca_status mvca_contours_points(const mvca_contours* contours, uint32_t index,
                                 double* xy);

#ifdef __cplusplus
}
#endif

#endif /* MVCA_H */
