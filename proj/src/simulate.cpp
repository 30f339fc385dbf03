#include "mvca/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mvca/parallel.hpp"
#include "mvca/rng.hpp"
#include "mvca/safety.hpp"

namespace mvca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_reached(const std::vector<VehicleState>& states) {
  return std::all_of(states.begin(), states.end(),
                     [](const VehicleState& v) { return v.reached; });
}

void latch_arrivals(std::vector<VehicleState>& states, const Scenario& sc) {
  for (int i = 0; i < sc.n; ++i) {
    if (states[i].reached) continue;
    double dx = states[i].x - sc.targets[i][0];
    double dy = states[i].y - sc.targets[i][1];
    if (std::hypot(dx, dy) <= sc.params.goal_radius) states[i].reached = true;
  }
}

std::vector<std::array<int, 2>> violating_pairs(
    const std::vector<VehicleState>& states, double radius) {
  std::vector<std::array<int, 2>> pairs;
  const int n = static_cast<int>(states.size());
  for (int i = 0; i < n; ++i) {
    if (states[i].reached) continue;
    for (int j = i + 1; j < n; ++j) {
      if (states[j].reached) continue;
      if (std::hypot(states[i].x - states[j].x, states[i].y - states[j].y) <
          radius) {
        pairs.push_back({i, j});
      }
    }
  }
  return pairs;
}

void check_field_match(const ValueField& field, const ScenarioParams& p) {
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
  if (!field.converged) {
    throw std::invalid_argument("value function is not converged");
  }
  if (!close(field.dynamics.speed, p.dynamics.speed) ||
      !close(field.dynamics.max_turn_rate, p.dynamics.max_turn_rate) ||
      !close(field.capture_radius, p.capture_radius)) {
    throw std::invalid_argument(
        "scenario dynamics do not match the value function");
  }
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kMip: return "mip";
    case Method::kSamv: return "samv";
    case Method::kBaseline: return "baseline";
  }
  return "?";
}

Scenario random_scenario(int n, std::uint64_t seed, const ScenarioParams& params) {
  if (n < 2 || n > 16) {
    throw std::invalid_argument("vehicle count must be in [2, 16]");
  }
  Scenario sc;
  sc.n = n;
  sc.params = params;
  const double radius = 10.0 + 2.0 * (n - 3);
  Rng rng(seed);
  for (int v = 0; v < n; ++v) {
    const double ang = kTwoPi * v / n;
    const double cx = radius * std::cos(ang);
    const double cy = radius * std::sin(ang);
    sc.targets.push_back({-cx, -cy});
    const double dx = rng.uniform(-params.position_jitter, params.position_jitter);
    const double dy = rng.uniform(-params.position_jitter, params.position_jitter);
    const double dh = rng.uniform(-params.heading_jitter, params.heading_jitter);
    sc.initial.push_back(
        {cx + dx, cy + dy, wrap_angle(ang + kPi + dh), false});
  }
  return sc;
}

double liveness_control(const VehicleState& v, const std::array<double, 2>& target,
                        double gain, double max_turn_rate) {
  const double bearing = std::atan2(target[1] - v.y, target[0] - v.x);
  const double err = wrap_signed(bearing - v.heading);
  return std::clamp(gain * err, -max_turn_rate, max_turn_rate);
}

void step_vehicles(std::vector<VehicleState>& states,
                   std::span<const double> controls, double dt,
                   const DynamicsParams& dynamics) {
  const double v = dynamics.speed;
  for (std::size_t i = 0; i < states.size(); ++i) {
    VehicleState& s = states[i];
    if (s.reached) continue;
    const double w = controls[i];
    if (std::abs(w) < 1e-12) {
      s.x += v * dt * std::cos(s.heading);
      s.y += v * dt * std::sin(s.heading);
    } else {
      // Exact constant-turn-rate arc.
      const double h1 = s.heading + w * dt;
      s.x += (v / w) * (std::sin(h1) - std::sin(s.heading));
      s.y += (v / w) * (std::cos(s.heading) - std::cos(h1));
    }
    s.heading = wrap_angle(s.heading + w * dt);
  }
}

Decision decide_controls(const ValueField& field,
                         std::span<const VehicleState> states,
                         const Scenario& scenario, Method method) {
  const int n = scenario.n;
  if (static_cast<int>(states.size()) != n) {
    throw std::invalid_argument("state count does not match scenario");
  }
  const double threshold = scenario.params.conflict_threshold;

  // Pairwise safety levels; reached vehicles drop out as "infinitely far".
  std::vector<double> safety(static_cast<std::size_t>(n) * n, kInf);
  for (int i = 0; i < n; ++i) {
    if (states[i].reached) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i || states[j].reached) continue;
      safety[static_cast<std::size_t>(i) * n + j] =
          safety_level(field, states[i], states[j]);
    }
  }

  Decision d;
  switch (method) {
    case Method::kBaseline:
      d.assignment = baseline_assignment(safety, n, threshold);
      break;
    case Method::kMip: {
      RewardMatrix rewards =
          build_reward_matrix(priority_matrix(n), safety, threshold);
      d.assignment = solve_mip({rewards, {}}).assignment;
      break;
    }
    case Method::kSamv: {
      RewardMatrix rewards =
          build_reward_matrix(priority_matrix(n), safety, threshold);
      std::vector<ControlGroups> groups(n);
      for (int i = 0; i < n; ++i) {
        if (states[i].reached) continue;
        std::vector<int> conflict;
        for (int j = 0; j < n; ++j) {
          if (safety[static_cast<std::size_t>(i) * n + j] <= threshold) {
            conflict.push_back(j);
          }
        }
        groups[i] = common_control_sets(field, states, i, conflict);
      }
      d.assignment = solve_mip(samv_modify(rewards, groups)).assignment;
      break;
    }
  }

  d.controls.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (states[i].reached) continue;
    const int j = d.assignment.target_of(i);
    d.controls[i] =
        j >= 0 ? avoid_control(field, states[i], states[j])
               : liveness_control(states[i], scenario.targets[i],
                                  defaults::liveness_gain,
                                  scenario.params.dynamics.max_turn_rate);
  }
  return d;
}

Trace run_scenario(const ValueField& field, const Scenario& scenario,
                   Method method, double dt, double t_max) {
  check_field_match(field, scenario.params);
  if (!(dt > 0.0) || !(t_max >= 0.0)) {
    throw std::invalid_argument("bad time parameters");
  }
  Trace trace;
  trace.scenario = scenario;
  trace.method = method;
  trace.dt = dt;

  std::vector<VehicleState> states = scenario.initial;
  const int last_step = static_cast<int>(std::floor(t_max / dt + 1e-9));
  for (int step = 0;; ++step) {
    latch_arrivals(states, scenario);
    Decision d = decide_controls(field, states, scenario, method);
    TraceRecord rec;
    rec.time = step * dt;
    rec.states = states;
    rec.controls = d.controls;
    rec.targets.resize(scenario.n);
    for (int i = 0; i < scenario.n; ++i) rec.targets[i] = d.assignment.target_of(i);
    rec.violations = violating_pairs(states, scenario.params.capture_radius);
    trace.records.push_back(std::move(rec));
    if (all_reached(states) || step == last_step) break;
    step_vehicles(states, d.controls, dt, scenario.params.dynamics);
  }
  return trace;
}

Metrics compute_metrics(const Trace& trace, double violation_radius) {
  const int n = trace.scenario.n;
  Metrics m;
  m.arrival_times.assign(n, -1.0);
  std::vector<bool> violated(n, false);
  // Record 0 is the initial condition: it can flag vehicles as violated but
  // contributes no step to the conflict-ratio denominator.
  for (std::size_t r = 0; r < trace.records.size(); ++r) {
    const TraceRecord& rec = trace.records[r];
    for (int i = 0; i < n; ++i) {
      if (rec.states[i].reached && m.arrival_times[i] < 0.0) {
        m.arrival_times[i] = rec.time;
      }
    }
    auto pairs = violating_pairs(rec.states, violation_radius);
    for (auto [i, j] : pairs) {
      violated[i] = true;
      violated[j] = true;
    }
    if (r > 0) m.conflict_ratio += static_cast<double>(pairs.size());
  }
  const int steps = static_cast<int>(trace.records.size()) - 1;
  const double pair_count = n * (n - 1) / 2.0;
  m.conflict_ratio =
      steps > 0 ? m.conflict_ratio / (steps * pair_count) : 0.0;
  int successes = 0;
  for (int i = 0; i < n; ++i) {
    if (m.arrival_times[i] >= 0.0 && !violated[i]) ++successes;
  }
  m.success_ratio = static_cast<double>(successes) / n;
  return m;
}

std::vector<BatchRow> batch_run(const ValueField& field, std::span<const int> ns,
                                std::span<const Method> methods, int trials,
                                std::uint64_t base_seed,
                                const ScenarioParams& params, double dt,
                                double t_max, int workers) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (ns.empty() || methods.empty()) {
    throw std::invalid_argument("empty batch axes");
  }
  check_field_match(field, params);

  const int n_jobs = static_cast<int>(ns.size()) * trials;
  const int mcount = static_cast<int>(methods.size());
  // results[(ni * trials + trial) * mcount + mi] = {success, conflict}
  std::vector<std::array<double, 2>> results(
      static_cast<std::size_t>(n_jobs) * mcount);
  parallel_for(0, n_jobs, workers, [&](int lo, int hi) {
    for (int job = lo; job < hi; ++job) {
      const int ni = job / trials;
      const int trial = job % trials;
      const int n = ns[ni];
      // One scenario per (n, trial), shared across methods for pairing.
      Scenario sc =
          random_scenario(n, trial_seed(base_seed, n, trial), params);
      for (int mi = 0; mi < mcount; ++mi) {
        Trace tr = run_scenario(field, sc, methods[mi], dt, t_max);
        Metrics metrics = compute_metrics(tr, params.capture_radius);
        results[static_cast<std::size_t>(job) * mcount + mi] = {
            metrics.success_ratio, metrics.conflict_ratio};
      }
    }
  });

  std::vector<BatchRow> rows;
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    for (int mi = 0; mi < mcount; ++mi) {
      BatchRow row;
      row.n = ns[ni];
      row.method = methods[mi];
      row.trials = trials;
      for (int trial = 0; trial < trials; ++trial) {
        const auto& r =
            results[(ni * trials + static_cast<std::size_t>(trial)) * mcount + mi];
        row.mean_success += r[0];
        row.mean_conflict += r[1];
      }
      row.mean_success /= trials;
      row.mean_conflict /= trials;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace mvca
