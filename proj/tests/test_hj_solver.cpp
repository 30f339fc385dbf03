#include <cmath>
#include <vector>

#include "doctest.h"
#include "mvca/hj_solver.hpp"
#include "mvca/rng.hpp"
#include "support/field_util.hpp"

using namespace mvca;
using test_util::make_field;
using test_util::small_grid;

namespace {

// Independent oracle: explicit max-min over a dense turn-rate lattice.  The
// payoff is linear in each turn rate, so the lattice (which contains the
// endpoints) attains the exact optimum.
double sampled_hamiltonian(const Vec3& s, const Vec3& p,
                           const DynamicsParams& d) {
  const int steps = 201;
  double best_i = -1e300;
  for (int a = 0; a < steps; ++a) {
    const double wi = -d.max_turn_rate + 2.0 * d.max_turn_rate * a / (steps - 1);
    double worst_j = 1e300;
    for (int b = 0; b < steps; ++b) {
      const double wj =
          -d.max_turn_rate + 2.0 * d.max_turn_rate * b / (steps - 1);
      const double dot =
          p[0] * (-d.speed + d.speed * std::cos(s[2]) + wi * s[1]) +
          p[1] * (d.speed * std::sin(s[2]) - wi * s[0]) + p[2] * (wj - wi);
      worst_j = std::min(worst_j, dot);
    }
    best_i = std::max(best_i, worst_j);
  }
  return best_i;
}

}  // namespace

TEST_CASE("closed-form Hamiltonian equals the sampled max-min") {
  DynamicsParams d{};
  Rng rng(101);
  for (int t = 0; t < 1000; ++t) {
    Vec3 s = {rng.uniform(-45, 45), rng.uniform(-45, 45),
              rng.uniform(0.0, kTwoPi)};
    Vec3 p = {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double closed = hamiltonian(s, p, d);
    const double sampled = sampled_hamiltonian(s, p, d);
    CHECK(closed == doctest::Approx(sampled).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("a field with non-negative Hamiltonian everywhere is frozen") {
  // V = -p_x: the costate is (-1, 0, 0) so H = v(1 - cos t) + wbar|p_y| >= 0
  // and the freeze update min(0, H) never fires.
  ValueField f = make_field(small_grid(9, 9, 8),
                            [](double x, double, double) { return -x; });
  std::vector<double> before = f.values;
  SolveOptions opt;
  opt.tolerance = 1e-12;
  SolveStats stats = solve_brs(f, DynamicsParams{}, opt);
  CHECK(stats.sweeps == 1);
  CHECK(stats.residual == 0.0);
  CHECK(stats.converged);
  CHECK(f.values == before);
}

TEST_CASE("sweeps never increase values") {
  ValueField f = signed_distance_cylinder(small_grid(15, 15, 12), 5.0);
  SolveOptions opt;
  opt.max_iterations = 1;
  for (int sweep = 0; sweep < 25; ++sweep) {
    std::vector<double> before = f.values;
    solve_brs(f, DynamicsParams{}, opt);
    for (std::size_t c = 0; c < f.values.size(); ++c) {
      CHECK(f.values[c] <= before[c]);
    }
  }
}

TEST_CASE("time step follows the CFL bound") {
  ValueField f = signed_distance_cylinder(small_grid(16, 16, 10, 30.0), 5.0);
  SolveOptions opt;
  opt.max_iterations = 1;
  opt.cfl = 0.8;
  SolveStats stats = solve_brs(f, DynamicsParams{}, opt);
  // alpha_x = 2v + wbar*30, alpha_y = v + wbar*30, alpha_t = 2 wbar.
  const double dx = 60.0 / 15, dth = kTwoPi / 10;
  const double denom = 40.0 / dx + 35.0 / dx + 2.0 / dth;
  CHECK(stats.time_step == doctest::Approx(0.8 / denom).epsilon(1e-12));
}

TEST_CASE("coarse solve converges and is idempotent at the fixed point") {
  ValueField f = signed_distance_cylinder(small_grid(31, 31, 30), 5.0);
  std::vector<double> initial = f.values;
  SolveStats stats = solve_brs(f, DynamicsParams{});
  CHECK(stats.converged);
  CHECK(stats.residual < 1e-3);
  CHECK(stats.sweeps > 10);
  CHECK(f.converged);
  for (std::size_t c = 0; c < f.values.size(); ++c) {
    CHECK(f.values[c] <= initial[c] + 1e-12);
  }
  // Probing the converged field stays below tolerance.
  CHECK(residual_probe(f, DynamicsParams{}) < 1e-3);

  // The value floor at the cylinder axis never moves: at a local minimum
  // every upwind flux term is non-negative, so the freeze update leaves it
  // alone.
  const Grid3& g = f.grid;
  CHECK(f.values[g.index(15, 15, 7)] == -5.0);

  // Head-on close pair is captured, distant tail-chase pair is safe.
  CHECK(*sample_value(f, {6.0, 0.0, kPi}) <= 0.0);
  CHECK(*sample_value(f, {40.0, 0.0, 0.0}) > 1.5);
}

TEST_CASE("solve is bitwise deterministic across worker counts") {
  auto run = [](int workers) {
    ValueField f = signed_distance_cylinder(small_grid(13, 13, 12), 5.0);
    SolveOptions opt;
    opt.max_iterations = 60;
    opt.tolerance = 1e-9;
    opt.workers = workers;
    solve_brs(f, DynamicsParams{}, opt);
    return f.values;
  };
  std::vector<double> one = run(1);
  CHECK(run(3) == one);
  CHECK(run(8) == one);
}

TEST_CASE("solver rejects inconsistent inputs") {
  ValueField f = signed_distance_cylinder(small_grid(9, 9, 8), 5.0);
  SUBCASE("value array size mismatch") {
    f.values.pop_back();
    CHECK_THROWS_AS(solve_brs(f, DynamicsParams{}), std::invalid_argument);
  }
  SUBCASE("non-positive dynamics") {
    CHECK_THROWS_AS(solve_brs(f, DynamicsParams{0.0, 1.0}),
                    std::invalid_argument);
  }
  SUBCASE("bad cfl") {
    SolveOptions opt;
    opt.cfl = 1.5;
    CHECK_THROWS_AS(solve_brs(f, DynamicsParams{}, opt), std::invalid_argument);
  }
}
