#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>

#include "json.hpp"
#include "mvca.h"

namespace cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void require_object(const json& node, const std::string& where) {
  if (!node.is_object()) fail(where + " must be a JSON object");
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return it.key() == k;
        }) == allowed.end()) {
      fail("unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

double get_number(const json& obj, const std::string& where, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key + " must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::uint64_t get_u64(const json& obj, const std::string& where,
                      const char* key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<double>() < 0)) {
    fail(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& where,
                       const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key + " must be a string");
  return v.get<std::string>();
}

void positive(double v, const char* name) {
  if (!(v > 0.0)) fail(std::string(name) + " must be positive");
}

void non_negative(double v, const char* name) {
  if (!(v >= 0.0)) fail(std::string(name) + " must be non-negative");
}

}  // namespace

int method_id(const std::string& name) {
  if (name == "mip") return MVCA_METHOD_MIP;
  if (name == "samv") return MVCA_METHOD_SAMV;
  if (name == "baseline") return MVCA_METHOD_BASELINE;
  fail("method must be one of mip, samv, baseline (got \"" + name + "\")");
}

void validate_config(const RunConfig& c) {
  if (c.nx < 2 || c.ny < 2) fail("grid.nx and grid.ny must be at least 2");
  if (c.ntheta < 3) fail("grid.ntheta must be at least 3");
  if (c.nx > 4096 || c.ny > 4096 || c.ntheta > 4096) {
    fail("grid dimensions must be at most 4096");
  }
  positive(c.extent, "grid.extent");
  positive(c.speed, "dynamics.speed");
  positive(c.max_turn_rate, "dynamics.max_turn_rate");
  positive(c.capture_radius, "capture_radius");
  positive(c.conflict_threshold, "conflict_threshold");
  positive(c.tolerance, "solver.tolerance");
  if (c.max_iterations < 1) fail("solver.max_iterations must be at least 1");
  positive(c.dt, "sim.dt");
  non_negative(c.t_max, "sim.t_max");
  positive(c.goal_radius, "sim.goal_radius");
  non_negative(c.position_jitter, "sim.position_jitter");
  non_negative(c.heading_jitter, "sim.heading_jitter");
  if (c.scenario_n < 2 || c.scenario_n > 16) {
    fail("scenario.n must be in [2, 16]");
  }
  if (c.batch_ns.empty()) fail("batch.n_list must not be empty");
  for (int n : c.batch_ns) {
    if (n < 2 || n > 16) fail("batch.n_list entries must be in [2, 16]");
  }
  if (c.batch_trials < 1) fail("batch.trials must be at least 1");
  if (c.batch_methods.empty()) fail("batch.methods must not be empty");
  for (const std::string& m : c.batch_methods) method_id(m);
  method_id(c.method);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("config parse error: " + std::string(e.what()));
  }
  require_object(root, "config");
  check_keys(root, "config",
             {"grid", "dynamics", "capture_radius", "conflict_threshold",
              "solver", "sim", "scenario", "batch", "method"});

  RunConfig c;
  if (root.contains("grid")) {
    const json& g = root.at("grid");
    require_object(g, "grid");
    check_keys(g, "grid", {"nx", "ny", "ntheta", "extent"});
    c.nx = get_int(g, "grid", "nx", c.nx);
    c.ny = get_int(g, "grid", "ny", c.ny);
    c.ntheta = get_int(g, "grid", "ntheta", c.ntheta);
    c.extent = get_number(g, "grid", "extent", c.extent);
  }
  if (root.contains("dynamics")) {
    const json& d = root.at("dynamics");
    require_object(d, "dynamics");
    check_keys(d, "dynamics", {"speed", "max_turn_rate"});
    c.speed = get_number(d, "dynamics", "speed", c.speed);
    c.max_turn_rate = get_number(d, "dynamics", "max_turn_rate", c.max_turn_rate);
  }
  c.capture_radius = get_number(root, "config", "capture_radius", c.capture_radius);
  c.conflict_threshold =
      get_number(root, "config", "conflict_threshold", c.conflict_threshold);
  if (root.contains("solver")) {
    const json& s = root.at("solver");
    require_object(s, "solver");
    check_keys(s, "solver", {"tolerance", "max_iterations"});
    c.tolerance = get_number(s, "solver", "tolerance", c.tolerance);
    c.max_iterations = get_int(s, "solver", "max_iterations", c.max_iterations);
  }
  if (root.contains("sim")) {
    const json& s = root.at("sim");
    require_object(s, "sim");
    check_keys(s, "sim",
               {"dt", "t_max", "goal_radius", "position_jitter",
                "heading_jitter"});
    c.dt = get_number(s, "sim", "dt", c.dt);
    c.t_max = get_number(s, "sim", "t_max", c.t_max);
    c.goal_radius = get_number(s, "sim", "goal_radius", c.goal_radius);
    c.position_jitter = get_number(s, "sim", "position_jitter", c.position_jitter);
    c.heading_jitter = get_number(s, "sim", "heading_jitter", c.heading_jitter);
  }
  if (root.contains("scenario")) {
    const json& s = root.at("scenario");
    require_object(s, "scenario");
    check_keys(s, "scenario", {"n", "seed"});
    c.scenario_n = get_int(s, "scenario", "n", c.scenario_n);
    c.scenario_seed = get_u64(s, "scenario", "seed", c.scenario_seed);
  }
  if (root.contains("batch")) {
    const json& b = root.at("batch");
    require_object(b, "batch");
    check_keys(b, "batch", {"n_list", "trials", "base_seed", "methods"});
    if (b.contains("n_list")) {
      const json& v = b.at("n_list");
      if (!v.is_array()) fail("batch.n_list must be an array of integers");
      c.batch_ns.clear();
      for (const json& e : v) {
        if (!e.is_number_integer()) {
          fail("batch.n_list must be an array of integers");
        }
        c.batch_ns.push_back(e.get<int>());
      }
    }
    c.batch_trials = get_int(b, "batch", "trials", c.batch_trials);
    c.batch_base_seed = get_u64(b, "batch", "base_seed", c.batch_base_seed);
    if (b.contains("methods")) {
      const json& v = b.at("methods");
      if (!v.is_array()) fail("batch.methods must be an array of strings");
      c.batch_methods.clear();
      for (const json& e : v) {
        if (!e.is_string()) fail("batch.methods must be an array of strings");
        c.batch_methods.push_back(e.get<std::string>());
      }
    }
  }
  c.method = get_string(root, "config", "method", c.method);

  validate_config(c);
  return c;
}

}  // namespace cli
