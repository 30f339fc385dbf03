// Black-box tests for the command-line binary: every case spawns the real
// executable (path in MVCA_CLI) and checks exit codes and output files.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mvca/brs_file.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& scratch_dir() {
  static fs::path dir = [] {
    const char* env = std::getenv("MVCA_TEST_DIR");
    fs::path d = env != nullptr
                     ? fs::path(env)
                     : fs::temp_directory_path() /
                           ("cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string cli_binary() {
  const char* env = std::getenv("MVCA_CLI");
  REQUIRE_MESSAGE(env != nullptr, "MVCA_CLI must point at the built binary");
  return env;
}

std::string fixture_brs() {
  const char* env = std::getenv("MVCA_TEST_BRS");
  REQUIRE_MESSAGE(env != nullptr, "MVCA_TEST_BRS must point at a solved file");
  return env;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter));
  ++counter;
  const std::string cmd = cli_binary() + " " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  return {WEXITSTATUS(raw), slurp(out), slurp(err)};
}

fs::path write_config(const std::string& name, const std::string& json) {
  const fs::path path = scratch_dir() / name;
  spit(path, json);
  return path;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

// Small grid so the compute tests finish in seconds.
const char* kTinyGrid =
    R"({"grid": {"nx": 19, "ny": 19, "ntheta": 12, "extent": 27.0}})";

}  // namespace

TEST_CASE("argument parsing") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);            // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 2);  // unknown subcommand
}

TEST_CASE("brs compute: convergence, determinism, and honest failure") {
  const fs::path cfg = write_config("tiny.json", kTinyGrid);
  const fs::path brs_a = scratch_dir() / "tiny_a.brs";
  const fs::path brs_b = scratch_dir() / "tiny_b.brs";

  RunResult first = run_cli("brs compute --config " + cfg.string() + " --brs " +
                            brs_a.string());
  CHECK(first.exit_code == 0);
  CHECK(first.out.find("sweep") != std::string::npos);
  CHECK(first.out.find("converged") != std::string::npos);
  CHECK(first.out.find("wrote") != std::string::npos);

  mvca::ValueField field = mvca::load_brs(brs_a.string());
  CHECK(field.converged);
  CHECK(field.grid.dims[0] == 19);
  CHECK(field.capture_radius == 5.0);

  RunResult second = run_cli("brs compute --config " + cfg.string() +
                             " --brs " + brs_b.string());
  REQUIRE(second.exit_code == 0);
  CHECK(slurp(brs_a) == slurp(brs_b));

  SUBCASE("iteration budget exhaustion still writes the file") {
    const fs::path cfg2 = write_config(
        "tiny_short.json",
        R"({"grid": {"nx": 19, "ny": 19, "ntheta": 12, "extent": 27.0},
            "solver": {"max_iterations": 2}})");
    const fs::path brs_c = scratch_dir() / "tiny_c.brs";
    RunResult r = run_cli("brs compute --config " + cfg2.string() + " --brs " +
                          brs_c.string());
    CHECK(r.exit_code == 5);
    CHECK(r.out.find("did not converge") != std::string::npos);
    mvca::ValueField partial = mvca::load_brs(brs_c.string());
    CHECK(!partial.converged);
  }
}

TEST_CASE("configuration errors exit with the config status") {
  const fs::path broken = write_config("broken.json", "{ not json");
  CHECK(run_cli("brs compute --config " + broken.string()).exit_code == 2);

  const fs::path unknown = write_config(
      "unknown.json", R"({"grid": {"nx": 21, "stride": 2}})");
  CHECK(run_cli("brs compute --config " + unknown.string()).exit_code == 2);

  const fs::path bad_type =
      write_config("bad_type.json", R"({"grid": {"nx": "many"}})");
  CHECK(run_cli("brs compute --config " + bad_type.string()).exit_code == 2);

  const fs::path bad_value =
      write_config("bad_value.json", R"({"scenario": {"n": 1}})");
  CHECK(run_cli("simulate --config " + bad_value.string() + " --brs " +
                fixture_brs())
            .exit_code == 2);
}

TEST_CASE("simulate writes the trace bundle") {
  const fs::path out = scratch_dir() / "sim_out";
  const fs::path cfg = write_config(
      "sim.json", R"({"scenario": {"n": 3, "seed": 4}, "sim": {"t_max": 2.0}})");

  RunResult r = run_cli("simulate --config " + cfg.string() + " --brs " +
                        fixture_brs() + " --out " + out.string() + " --svg");
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);

  const std::string trace = slurp(out / "trace.csv");
  CHECK(trace.rfind("time,v1_x,v1_y,v1_heading,v1_reached,v1_omega,v1_target,",
                    0) == 0);
  const int lines = count_lines(trace);
  CHECK(lines >= 3);        // header plus at least two records
  CHECK(lines <= 42);       // header plus floor(2.0 / 0.05) + 1 records
  CHECK(trace.find("\n0,") != std::string::npos);  // the initial record

  const std::string metrics = slurp(out / "metrics.txt");
  CHECK(metrics.find("method mip") != std::string::npos);
  CHECK(metrics.find("n 3") != std::string::npos);
  CHECK(metrics.find("success_ratio ") != std::string::npos);
  CHECK(metrics.find("conflict_ratio ") != std::string::npos);
  CHECK(metrics.find("arrival_time_3 ") != std::string::npos);

  const std::string svg = slurp(out / "scene.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);

  SUBCASE("method flag overrides the config") {
    RunResult rb = run_cli("simulate --config " + cfg.string() + " --brs " +
                           fixture_brs() + " --out " + out.string() +
                           " --method baseline");
    REQUIRE(rb.exit_code == 0);
    CHECK(slurp(out / "metrics.txt").find("method baseline") !=
          std::string::npos);
  }
  SUBCASE("bogus method name") {
    CHECK(run_cli("simulate --config " + cfg.string() + " --brs " +
                  fixture_brs() + " --method sorcery")
              .exit_code == 2);
  }
}

TEST_CASE("simulate rejects missing or mismatched value files") {
  CHECK(run_cli("simulate --brs " + (scratch_dir() / "nope.brs").string())
            .exit_code == 3);

  const fs::path garbled = scratch_dir() / "garbled.brs";
  spit(garbled, "BRS1 but not really");
  CHECK(run_cli("simulate --brs " + garbled.string()).exit_code == 3);

  const fs::path slow = write_config("slow.json", R"({"dynamics": {"speed": 4.0}})");
  CHECK(run_cli("simulate --config " + slow.string() + " --brs " +
                fixture_brs())
            .exit_code == 2);
}

TEST_CASE("batch writes the summary table") {
  const fs::path out = scratch_dir() / "batch_out";
  const fs::path cfg = write_config(
      "batch.json",
      R"({"batch": {"n_list": [3], "trials": 2, "base_seed": 5,
                    "methods": ["mip", "baseline"]},
          "sim": {"t_max": 2.0}})");
  RunResult r = run_cli("batch --config " + cfg.string() + " --brs " +
                        fixture_brs() + " --out " + out.string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);

  const std::string summary = slurp(out / "summary.csv");
  CHECK(summary.rfind(
            "n,method,trials,base_seed,mean_success_ratio,mean_conflict_ratio",
            0) == 0);
  CHECK(count_lines(summary) == 3);
  CHECK(summary.find("\n3,mip,2,5,") != std::string::npos);
  CHECK(summary.find("\n3,baseline,2,5,") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  const fs::path out = scratch_dir() / "verify_out";
  RunResult r = run_cli("verify theorem1 --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  const std::string report = slurp(out / "verify_theorem1.txt");
  CHECK(report.find("PASS") != std::string::npos);
  CHECK(report.find("64 cases") != std::string::npos);

  CHECK(run_cli("verify conjecture9 --out " + out.string()).exit_code == 2);
}
