// Command-line front end: computes and stores the pairwise value function,
// runs single scenarios and batch comparisons, and executes the exhaustive
// theorem checks.  Talks to the library exclusively through the C API.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "mvca.h"
#include "svg_render.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFormat = 3;
constexpr int kExitVerification = 4;
constexpr int kExitNotConverged = 5;

int exit_code(mvca_status status) {
  switch (status) {
    case MVCA_OK: return kExitOk;
    case MVCA_ERR_INVALID_ARGUMENT: return kExitConfig;
    case MVCA_ERR_IO:
    case MVCA_ERR_FORMAT: return kExitFormat;
    case MVCA_ERR_VERIFICATION_FAILED: return kExitVerification;
    case MVCA_ERR_NOT_CONVERGED: return kExitNotConverged;
    case MVCA_ERR_OUT_OF_BOUNDS:
    case MVCA_ERR_INTERNAL: break;
  }
  return 1;
}

int fail_status(const char* what, mvca_status status) {
  std::cerr << what << ": " << mvca_status_name(status) << "\n";
  return exit_code(status);
}

// MVCA_WORKERS: positive worker count, or unset/0 for hardware concurrency.
bool read_workers(int& workers) {
  workers = 0;
  const char* env = std::getenv("MVCA_WORKERS");
  if (env == nullptr || *env == '\0') return true;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 0 || v > 1024) {
    std::cerr << "MVCA_WORKERS must be a small non-negative integer, got \""
              << env << "\"\n";
    return false;
  }
  workers = static_cast<int>(v);
  return true;
}

cli::RunConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) return cli::RunConfig{};
  return cli::load_config(config_path);
}

bool ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) std::cerr << "cannot create output directory " << dir << "\n";
  return !ec;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return false;
  }
  return true;
}

mvca_grid_spec grid_spec(const cli::RunConfig& c) {
  mvca_grid_spec g{};
  g.nx = static_cast<uint32_t>(c.nx);
  g.ny = static_cast<uint32_t>(c.ny);
  g.ntheta = static_cast<uint32_t>(c.ntheta);
  g.xmin = -c.extent;
  g.xmax = c.extent;
  g.ymin = -c.extent;
  g.ymax = c.extent;
  return g;
}

mvca_scenario_spec scenario_spec(const cli::RunConfig& c) {
  mvca_scenario_spec s{};
  s.n = static_cast<uint32_t>(c.scenario_n);
  s.seed = c.scenario_seed;
  s.conflict_threshold = c.conflict_threshold;
  s.goal_radius = c.goal_radius;
  s.position_jitter = c.position_jitter;
  s.heading_jitter = c.heading_jitter;
  return s;
}

// Loads the value function and checks it matches the config's dynamics, so a
// scenario is never scored against a field computed for different vehicles.
int load_field_checked(const std::string& brs_path, const cli::RunConfig& c,
                       mvca_field** out) {
  mvca_status status = mvca_field_load(brs_path.c_str(), out);
  if (status != MVCA_OK) {
    return fail_status(("cannot load " + brs_path).c_str(), status);
  }
  mvca_params p{};
  mvca_field_params(*out, &p);
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
  if (!close(p.speed, c.speed) || !close(p.max_turn_rate, c.max_turn_rate) ||
      !close(p.capture_radius, c.capture_radius)) {
    std::cerr << "value function parameters (v=" << p.speed
              << ", max turn=" << p.max_turn_rate << ", R=" << p.capture_radius
              << ") do not match the config\n";
    mvca_field_destroy(*out);
    *out = nullptr;
    return kExitConfig;
  }
  if (!mvca_field_converged(*out)) {
    std::cerr << brs_path << " holds an unconverged value function\n";
    mvca_field_destroy(*out);
    *out = nullptr;
    return kExitNotConverged;
  }
  return kExitOk;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string format_fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// ------------------------------------------------------------ brs compute

int cmd_brs_compute(const std::string& config_path, std::string brs_path) {
  cli::RunConfig config = load_or_default(config_path);
  if (brs_path.empty()) brs_path = "default.brs";

  int workers = 0;
  if (!read_workers(workers)) return kExitConfig;

  mvca_field* field = nullptr;
  mvca_grid_spec g = grid_spec(config);
  mvca_params p{config.speed, config.max_turn_rate, config.capture_radius};
  if (mvca_status s = mvca_field_create(&g, &p, &field); s != MVCA_OK) {
    return fail_status("cannot set up value function", s);
  }

  std::cout << "solving " << g.nx << "x" << g.ny << "x" << g.ntheta
            << " grid (tolerance " << config.tolerance << ")\n";
  const auto t0 = std::chrono::steady_clock::now();
  mvca_status solve_status = mvca_field_solve(
      field, config.tolerance, static_cast<uint32_t>(config.max_iterations),
      workers,
      [](uint32_t sweep, double residual, void*) {
        std::printf("sweep %5u  residual %.6e\n", sweep, residual);
      },
      nullptr);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("%s after %.1f s (final residual %.6e)\n",
              solve_status == MVCA_OK ? "converged" : "did not converge", wall,
              mvca_field_residual(field));

  // The file is written either way; an unconverged field loads as such.
  mvca_status save_status = mvca_field_save(field, brs_path.c_str());
  mvca_field_destroy(field);
  if (save_status != MVCA_OK) {
    return fail_status(("cannot write " + brs_path).c_str(), save_status);
  }
  std::cout << "wrote " << brs_path << "\n";
  return exit_code(solve_status);
}

// --------------------------------------------------------------- simulate

int cmd_simulate(const std::string& config_path, const std::string& brs_path,
                 const std::string& method_flag, const std::string& out_dir,
                 bool svg, std::optional<double> svg_time) {
  cli::RunConfig config = load_or_default(config_path);
  const std::string method = method_flag.empty() ? config.method : method_flag;
  const int method_raw = cli::method_id(method);
  if (brs_path.empty()) {
    std::cerr << "simulate requires --brs\n";
    return kExitConfig;
  }
  if (!ensure_dir(out_dir)) return kExitFormat;

  mvca_field* field = nullptr;
  if (int rc = load_field_checked(brs_path, config, &field); rc != kExitOk) {
    return rc;
  }

  mvca_scenario_spec spec = scenario_spec(config);
  mvca_trace* trace = nullptr;
  mvca_status status =
      mvca_simulate(field, &spec, static_cast<mvca_method>(method_raw),
                    config.dt, config.t_max, &trace);
  if (status != MVCA_OK) {
    mvca_field_destroy(field);
    return fail_status("simulation failed", status);
  }

  const uint32_t records = mvca_trace_records(trace);
  const uint32_t n = mvca_trace_vehicles(trace);

  std::string csv = "time";
  for (uint32_t i = 1; i <= n; ++i) {
    const std::string v = "v" + std::to_string(i);
    csv += "," + v + "_x," + v + "_y," + v + "_heading," + v + "_reached," +
           v + "_omega," + v + "_target";
  }
  csv += "\n";
  std::vector<double> states(4 * n), controls(n);
  std::vector<int32_t> assignment(n);
  for (uint32_t r = 0; r < records; ++r) {
    mvca_trace_states(trace, r, states.data());
    mvca_trace_controls(trace, r, controls.data());
    mvca_trace_assignment(trace, r, assignment.data());
    csv += format_double(mvca_trace_time(trace, r));
    for (uint32_t i = 0; i < n; ++i) {
      csv += "," + format_double(states[4 * i]) + "," +
             format_double(states[4 * i + 1]) + "," +
             format_double(states[4 * i + 2]) + "," +
             (states[4 * i + 3] > 0.5 ? "1" : "0") + "," +
             format_double(controls[i]) + "," + std::to_string(assignment[i]);
    }
    csv += "\n";
  }

  mvca_metrics metrics{};
  mvca_trace_metrics(trace, config.capture_radius, &metrics);
  std::vector<double> arrivals(n);
  mvca_trace_arrivals(trace, arrivals.data());

  std::string metrics_txt;
  metrics_txt += "method " + method + "\n";
  metrics_txt += "n " + std::to_string(n) + "\n";
  metrics_txt += "seed " + std::to_string(config.scenario_seed) + "\n";
  metrics_txt += "records " + std::to_string(records) + "\n";
  metrics_txt += "success_ratio " + format_fixed(metrics.success_ratio) + "\n";
  metrics_txt += "conflict_ratio " + format_fixed(metrics.conflict_ratio) + "\n";
  for (uint32_t i = 0; i < n; ++i) {
    metrics_txt += "arrival_time_" + std::to_string(i + 1) + " " +
                   format_fixed(arrivals[i]) + "\n";
  }

  bool wrote = write_file((fs::path(out_dir) / "trace.csv").string(), csv) &&
               write_file((fs::path(out_dir) / "metrics.txt").string(),
                          metrics_txt);
  if (wrote && svg) {
    wrote = write_file(
        (fs::path(out_dir) / "scene.svg").string(),
        cli::render_scene(field, trace, config.conflict_threshold, svg_time));
  }

  std::cout << "method " << method << ": success "
            << format_fixed(metrics.success_ratio) << ", conflict "
            << format_fixed(metrics.conflict_ratio) << ", " << records
            << " records\n";

  mvca_trace_destroy(trace);
  mvca_field_destroy(field);
  return wrote ? kExitOk : kExitFormat;
}

// ------------------------------------------------------------------ batch

int cmd_batch(const std::string& config_path, const std::string& brs_path,
              const std::string& out_dir) {
  cli::RunConfig config = load_or_default(config_path);
  if (brs_path.empty()) {
    std::cerr << "batch requires --brs\n";
    return kExitConfig;
  }
  if (!ensure_dir(out_dir)) return kExitFormat;
  int workers = 0;
  if (!read_workers(workers)) return kExitConfig;

  mvca_field* field = nullptr;
  if (int rc = load_field_checked(brs_path, config, &field); rc != kExitOk) {
    return rc;
  }

  std::vector<uint32_t> ns(config.batch_ns.begin(), config.batch_ns.end());
  std::vector<int32_t> methods;
  for (const std::string& m : config.batch_methods) {
    methods.push_back(cli::method_id(m));
  }
  mvca_scenario_spec proto = scenario_spec(config);
  std::vector<mvca_batch_row> rows(ns.size() * methods.size());

  std::cout << "running " << ns.size() * methods.size() * config.batch_trials
            << " simulations...\n";
  mvca_status status = mvca_batch(
      field, ns.data(), static_cast<uint32_t>(ns.size()), methods.data(),
      static_cast<uint32_t>(methods.size()),
      static_cast<uint32_t>(config.batch_trials), config.batch_base_seed,
      &proto, config.dt, config.t_max, workers, rows.data());
  mvca_field_destroy(field);
  if (status != MVCA_OK) return fail_status("batch failed", status);

  std::string summary =
      "n,method,trials,base_seed,mean_success_ratio,mean_conflict_ratio\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string method =
        config.batch_methods[r % config.batch_methods.size()];
    summary += std::to_string(rows[r].n) + "," + method + "," +
               std::to_string(rows[r].trials) + "," +
               std::to_string(config.batch_base_seed) + "," +
               format_fixed(rows[r].mean_success) + "," +
               format_fixed(rows[r].mean_conflict) + "\n";
  }
  const std::string path = (fs::path(out_dir) / "summary.csv").string();
  if (!write_file(path, summary)) return kExitFormat;
  std::cout << summary;
  return kExitOk;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const std::string& which, const std::string& out_dir) {
  if (which != "theorem1" && which != "theorem2" && which != "mip-oracle") {
    std::cerr << "verify target must be theorem1, theorem2, or mip-oracle\n";
    return kExitConfig;
  }
  if (!ensure_dir(out_dir)) return kExitFormat;
  std::vector<char> report(1 << 16);
  mvca_status status = mvca_verify(which.c_str(), report.data(), report.size());
  if (status != MVCA_OK && status != MVCA_ERR_VERIFICATION_FAILED) {
    return fail_status("verification did not run", status);
  }
  std::cout << report.data();
  const std::string path =
      (fs::path(out_dir) / ("verify_" + which + ".txt")).string();
  if (!write_file(path, report.data())) return kExitFormat;
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise-reachability multi-vehicle coordination tool"};
  app.require_subcommand(1);

  std::string config_path, brs_path, out_dir = ".", method_flag, verify_which;
  bool svg = false;
  double svg_time = -1.0;

  CLI::App* brs = app.add_subcommand("brs", "value function operations");
  brs->require_subcommand(1);
  CLI::App* compute =
      brs->add_subcommand("compute", "solve the pairwise value function");
  compute->add_option("--config", config_path, "JSON config file");
  compute->add_option("--brs", brs_path, "output file (default default.brs)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "run one coordination scenario");
  simulate->add_option("--config", config_path, "JSON config file");
  simulate->add_option("--brs", brs_path, "value function file")->required();
  simulate->add_option("--method", method_flag, "mip | samv | baseline");
  simulate->add_option("--out", out_dir, "output directory (default .)");
  simulate->add_flag("--svg", svg, "also render scene.svg");
  simulate->add_option("--svg-time", svg_time,
                       "snapshot time for the SVG (default: densest record)");

  CLI::App* batch =
      app.add_subcommand("batch", "trial sweep over sizes and methods");
  batch->add_option("--config", config_path, "JSON config file");
  batch->add_option("--brs", brs_path, "value function file")->required();
  batch->add_option("--out", out_dir, "output directory (default .)");

  CLI::App* verify = app.add_subcommand("verify", "exhaustive theorem checks");
  verify
      ->add_option("which", verify_which,
                   "theorem1 | theorem2 | mip-oracle")
      ->required();
  verify->add_option("--out", out_dir, "output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (compute->parsed()) return cmd_brs_compute(config_path, brs_path);
    if (simulate->parsed()) {
      std::optional<double> snapshot;
      if (simulate->count("--svg-time") > 0) snapshot = svg_time;
      return cmd_simulate(config_path, brs_path, method_flag, out_dir, svg,
                          snapshot);
    }
    if (batch->parsed()) return cmd_batch(config_path, brs_path, out_dir);
    if (verify->parsed()) return cmd_verify(verify_which, out_dir);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
