#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mvca/coordination.hpp"
#include "mvca/defaults.hpp"
#include "mvca/value_field.hpp"

namespace mvca {

enum class Method { kMip, kSamv, kBaseline };

const char* method_name(Method m);

struct ScenarioParams {
  DynamicsParams dynamics{};
  double capture_radius = defaults::capture_radius;
  double conflict_threshold = defaults::conflict_threshold;
  double goal_radius = defaults::goal_radius;
  double position_jitter = defaults::position_jitter;
  double heading_jitter = defaults::heading_jitter;
};

struct Scenario {
  int n = 0;
  std::vector<VehicleState> initial;
  std::vector<std::array<double, 2>> targets;
  ScenarioParams params{};
};

// n vehicles evenly spaced on a circle of radius 10 + 2*(n - 3), headings
// toward the center, targets antipodal, then per vehicle a uniform
// perturbation of +-position_jitter on x and y and +-heading_jitter on the
// heading (drawn in that order).  Deterministic in the seed.
Scenario random_scenario(int n, std::uint64_t seed, const ScenarioParams& params);

// Proportional heading controller toward the target, clamped to the turn
// bound: clamp(gain * wrap_signed(bearing - heading)).  A target dead astern
// (bearing error +pi) turns positive.
double liveness_control(const VehicleState& v, const std::array<double, 2>& target,
                        double gain, double max_turn_rate);

// One exact constant-turn-rate step per vehicle; reached vehicles stay put.
void step_vehicles(std::vector<VehicleState>& states,
                   std::span<const double> controls, double dt,
                   const DynamicsParams& dynamics);

// One decision tick: conflict sets from the value function, rewards from the
// priority table, assignment per the chosen method, avoidance controls for
// assigned vehicles and liveness controls for the rest.  Reached vehicles are
// excluded throughout and get control 0.
struct Decision {
  ControlLogic assignment;
  std::vector<double> controls;
};
Decision decide_controls(const ValueField& field,
                         std::span<const VehicleState> states,
                         const Scenario& scenario, Method method);

struct TraceRecord {
  double time = 0.0;
  std::vector<VehicleState> states;
  std::vector<double> controls;       // applied over the following step
  std::vector<int> targets;           // assignment as target index, -1 if none
  std::vector<std::array<int, 2>> violations;  // unordered active pairs, i < j
};

struct Trace {
  Scenario scenario;
  Method method = Method::kMip;
  double dt = defaults::sim_dt;
  std::vector<TraceRecord> records;
};

// Fixed-step closed loop until every vehicle reached its goal or t_max.
// Produces floor(t_end / dt) + 1 records including the initial state.
Trace run_scenario(const ValueField& field, const Scenario& scenario,
                   Method method, double dt = defaults::sim_dt,
                   double t_max = defaults::sim_t_max);

struct Metrics {
  double success_ratio = 0.0;    // reached the goal, never in a violating pair
  double conflict_ratio = 0.0;   // violating active pairs per step per pair
  std::vector<double> arrival_times;  // -1 when the goal was never reached
};

// violation_radius defaults to the capture radius; pass a smaller radius to
// measure with a margin.  Pairs count while both vehicles are still active.
Metrics compute_metrics(const Trace& trace, double violation_radius);

struct BatchRow {
  int n = 0;
  Method method = Method::kMip;
  int trials = 0;
  double mean_success = 0.0;
  double mean_conflict = 0.0;
};

// Paired comparison: trial t of size n uses one scenario seed shared by all
// methods.  Deterministic in base_seed regardless of worker count.
std::vector<BatchRow> batch_run(const ValueField& field, std::span<const int> ns,
                                std::span<const Method> methods, int trials,
                                std::uint64_t base_seed,
                                const ScenarioParams& params,
                                double dt = defaults::sim_dt,
                                double t_max = defaults::sim_t_max,
                                int workers = 0);

}  // namespace mvca
