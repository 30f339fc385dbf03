#pragma once

// Documented defaults.  Every tunable the library or CLI falls back on lives
// here; config files override these, nothing else is implicit.

namespace mvca::defaults {

// Grid: 61 x 61 x 60 nodes over [-45,45]^2 x [0,2*pi), theta periodic.
inline constexpr int grid_nx = 61;
inline constexpr int grid_ny = 61;
inline constexpr int grid_ntheta = 60;
inline constexpr double grid_extent = 45.0;

// Vehicle model.
inline constexpr double speed = 5.0;
inline constexpr double max_turn_rate = 1.0;
inline constexpr double capture_radius = 5.0;

// Coordination: pairs with safety level <= threshold are in potential conflict.
inline constexpr double conflict_threshold = 1.5;

// Reachability solver.
inline constexpr double solver_tolerance = 1e-3;
inline constexpr int solver_max_iterations = 20000;
inline constexpr double solver_cfl = 0.8;

// Simulation loop.
inline constexpr double sim_dt = 0.05;
inline constexpr double sim_t_max = 30.0;
inline constexpr double goal_radius = 1.0;
inline constexpr double liveness_gain = 2.0;

// Random scenario perturbations: uniform +-position_jitter per position axis,
// uniform +-heading_jitter on the heading.
inline constexpr double position_jitter = 1.0;
inline constexpr double heading_jitter = 0.2;

}  // namespace mvca::defaults
