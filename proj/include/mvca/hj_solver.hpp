#pragma once

#include <functional>

#include "mvca/defaults.hpp"
#include "mvca/value_field.hpp"

namespace mvca {

struct SolveOptions {
  double tolerance = defaults::solver_tolerance;
  int max_iterations = defaults::solver_max_iterations;
  double cfl = defaults::solver_cfl;
  int workers = 0;  // 0: hardware concurrency
  // Called after selected sweeps with (sweep index, max pointwise change).
  std::function<void(int, double)> progress;
  int progress_every = 100;
};

struct SolveStats {
  int sweeps = 0;
  double residual = 0.0;
  bool converged = false;
  double time_step = 0.0;
};

// Closed-form Hamiltonian of the relative-state pursuit game: the avoiding
// vehicle maximizes, the opponent minimizes, both turn rates in
// [-max_turn_rate, max_turn_rate].
double hamiltonian(const Vec3& state, const Vec3& costate,
                   const DynamicsParams& params);

// Infinite-horizon backward reachable set solve, in place.  Godunov upwind
// sweeps with the value-freeze update V += dtau * min(0, H_hat); values are
// monotone non-increasing across sweeps.  Converged when the max pointwise
// change of a sweep drops below tolerance.
SolveStats solve_brs(ValueField& field, const DynamicsParams& params,
                     const SolveOptions& options = {});

// Max pointwise change one further sweep would apply, without modifying the
// field.  Used to re-derive the convergence flag for loaded fields.
double residual_probe(const ValueField& field, const DynamicsParams& params,
                      double cfl = defaults::solver_cfl, int workers = 0);

}  // namespace mvca
