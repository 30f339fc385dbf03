#include "mvca/safety.hpp"

#include <limits>
#include <stdexcept>

#include "mvca/relative.hpp"

namespace mvca {

namespace {

// sign with sign(0) -> +1, matching the convention that a vanishing switching
// term picks the positive turn.
double pos_sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

double safety_level(const ValueField& field, const VehicleState& vi,
                    const VehicleState& vj) {
  auto v = sample_value(field, relative_state(vi, vj));
  return v ? *v : std::numeric_limits<double>::infinity();
}

double avoid_control(const ValueField& field, const VehicleState& vi,
                     const VehicleState& vj) {
  Vec3 rel = relative_state(vi, vj);
  auto g = sample_gradient(field, rel);
  if (!g) throw std::domain_error("relative state outside grid");
  const auto& grad = *g;
  double sw = grad[0] * rel[1] - grad[1] * rel[0] - grad[2];
  return field.dynamics.max_turn_rate * pos_sign(sw);
}

double worst_case_opponent_control(const ValueField& field,
                                   const VehicleState& vi,
                                   const VehicleState& vj) {
  auto g = sample_gradient(field, relative_state(vi, vj));
  if (!g) throw std::domain_error("relative state outside grid");
  return -field.dynamics.max_turn_rate * pos_sign((*g)[2]);
}

SafetyAssessment assess(const ValueField& field, const VehicleState& vi,
                        const VehicleState& vj, double threshold) {
  SafetyAssessment a;
  a.level = safety_level(field, vi, vj);
  a.in_conflict = a.level <= threshold;
  if (std::isfinite(a.level)) a.avoid_turn_rate = avoid_control(field, vi, vj);
  return a;
}

std::vector<std::vector<int>> conflict_sets(const ValueField& field,
                                            std::span<const VehicleState> states,
                                            double threshold) {
  const int n = static_cast<int>(states.size());
  std::vector<std::vector<int>> sets(n);
  for (int i = 0; i < n; ++i) {
    if (states[i].reached) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i || states[j].reached) continue;
      if (safety_level(field, states[i], states[j]) <= threshold) {
        sets[i].push_back(j);
      }
    }
  }
  return sets;
}

ControlGroups common_control_sets(const ValueField& field,
                                  std::span<const VehicleState> states, int i,
                                  const std::vector<int>& conflict_set) {
  std::vector<int> positive, negative;
  for (int j : conflict_set) {
    if (avoid_control(field, states[i], states[j]) > 0.0) {
      positive.push_back(j);
    } else {
      negative.push_back(j);
    }
  }
  ControlGroups groups;
  if (!positive.empty()) groups.push_back(std::move(positive));
  if (!negative.empty()) groups.push_back(std::move(negative));
  return groups;
}

}  // namespace mvca
