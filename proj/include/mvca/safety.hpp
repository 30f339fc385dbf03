#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mvca/value_field.hpp"

namespace mvca {

// Pairwise safety read-outs for one ordered pair (i avoids j), all derived
// from the solved value function sampled at the relative state.

// Value at the relative state of (i, j); +infinity when the relative position
// leaves the grid (far apart means safe).
double safety_level(const ValueField& field, const VehicleState& vi,
                    const VehicleState& vj);

// Turn rate that maximizes the instantaneous growth of the safety level:
// max_turn_rate * sign(g_x * p_y - g_y * p_x - g_theta), sign(0) -> +1.
// Throws std::domain_error if the relative state is outside the grid.
double avoid_control(const ValueField& field, const VehicleState& vi,
                     const VehicleState& vj);

// Turn rate of j that minimizes the growth: -max_turn_rate * sign(g_theta).
double worst_case_opponent_control(const ValueField& field,
                                   const VehicleState& vi,
                                   const VehicleState& vj);

struct SafetyAssessment {
  double level = 0.0;
  bool in_conflict = false;
  std::optional<double> avoid_turn_rate;  // set only when on-grid
};

SafetyAssessment assess(const ValueField& field, const VehicleState& vi,
                        const VehicleState& vj, double threshold);

// conflict_sets()[i] lists the j with safety_level(i, j) <= threshold,
// ascending.  Vehicles flagged reached get empty sets and appear in none.
std::vector<std::vector<int>> conflict_sets(const ValueField& field,
                                            std::span<const VehicleState> states,
                                            double threshold);

// Partition of vehicle i's conflict set by the shared avoidance turn
// direction: at most two groups (+max_turn_rate first, then -), empty groups
// dropped, members ascending.
using ControlGroups = std::vector<std::vector<int>>;
ControlGroups common_control_sets(const ValueField& field,
                                  std::span<const VehicleState> states, int i,
                                  const std::vector<int>& conflict_set);

}  // namespace mvca
