#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvca/defaults.hpp"

namespace cli {

// Unreadable file, malformed JSON, unknown key, or out-of-range value.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every tunable of the tool chain with its documented default.  A config file
// overrides any subset; unknown keys are rejected so typos fail loudly.
struct RunConfig {
  // grid
  int nx = mvca::defaults::grid_nx;
  int ny = mvca::defaults::grid_ny;
  int ntheta = mvca::defaults::grid_ntheta;
  // Grid spans [-extent, extent]^2 in (p_x, p_y).
  double extent = mvca::defaults::grid_extent;

  // dynamics
  double speed = mvca::defaults::speed;
  double max_turn_rate = mvca::defaults::max_turn_rate;

  double capture_radius = mvca::defaults::capture_radius;
  double conflict_threshold = mvca::defaults::conflict_threshold;

  // solver
  double tolerance = mvca::defaults::solver_tolerance;
  int max_iterations = mvca::defaults::solver_max_iterations;

  // sim
  double dt = mvca::defaults::sim_dt;
  double t_max = mvca::defaults::sim_t_max;
  double goal_radius = mvca::defaults::goal_radius;
  double position_jitter = mvca::defaults::position_jitter;
  double heading_jitter = mvca::defaults::heading_jitter;

  // scenario (single simulate runs)
  int scenario_n = 3;
  std::uint64_t scenario_seed = 1;

  // batch
  std::vector<int> batch_ns = {3, 4, 5, 6, 7, 8};
  int batch_trials = 50;
  std::uint64_t batch_base_seed = 2026;
  std::vector<std::string> batch_methods = {"mip", "samv", "baseline"};

  std::string method = "mip";
};

// Parses and validates a JSON config file; throws ConfigError.
RunConfig load_config(const std::string& path);

// Validates an in-memory config (also applied at the end of load_config).
void validate_config(const RunConfig& config);

// "mip" / "samv" / "baseline" -> MVCA_METHOD_* value; throws ConfigError.
int method_id(const std::string& name);

}  // namespace cli
