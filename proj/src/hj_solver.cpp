#include "mvca/hj_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mvca/parallel.hpp"

namespace mvca {

namespace {

// Per-solve constants.  a0..a2 are the analytic maxima of the characteristic
// speed |dH/dp| per axis over the grid:
//   |dH/dp_x| <= 2v + wbar * max|p_y|
//   |dH/dp_y| <=  v + wbar * max|p_x|
//   |dH/dp_theta| <= 2 wbar
// They enter only through the CFL time step; the flux itself is upwinded.
struct Kernel {
  int nx = 0, ny = 0, nth = 0;
  double inv_dx = 0, inv_dy = 0, inv_dth = 0;
  double v = 0, w = 0;
  double a0 = 0, a1 = 0, a2 = 0;
  double dtau = 0;
  std::vector<double> xs, ys, cth, sth;
};

Kernel make_kernel(const Grid3& g, const DynamicsParams& p, double cfl) {
  Kernel k;
  k.nx = g.dims[0];
  k.ny = g.dims[1];
  k.nth = g.dims[2];
  k.inv_dx = 1.0 / g.spacing[0];
  k.inv_dy = 1.0 / g.spacing[1];
  k.inv_dth = 1.0 / g.spacing[2];
  k.v = p.speed;
  k.w = p.max_turn_rate;
  double max_ax = std::max(std::abs(g.min_corner[0]), std::abs(g.max_corner[0]));
  double max_ay = std::max(std::abs(g.min_corner[1]), std::abs(g.max_corner[1]));
  k.a0 = 2.0 * k.v + k.w * max_ay;
  k.a1 = k.v + k.w * max_ax;
  k.a2 = 2.0 * k.w;
  k.dtau = cfl / (k.a0 * k.inv_dx + k.a1 * k.inv_dy + k.a2 * k.inv_dth);
  k.xs.resize(k.nx);
  k.ys.resize(k.ny);
  for (int i = 0; i < k.nx; ++i) k.xs[i] = g.coord(0, i);
  for (int j = 0; j < k.ny; ++j) k.ys[j] = g.coord(1, j);
  k.cth.resize(k.nth);
  k.sth.resize(k.nth);
  for (int t = 0; t < k.nth; ++t) {
    k.cth[t] = std::cos(g.coord(2, t));
    k.sth[t] = std::sin(g.coord(2, t));
  }
  return k;
}

// One Jacobi step of the freeze update over theta planes [k0, k1):
//   V_new = V + dtau * min(0, H_hat)
// H_hat is the Godunov upwind Hamiltonian: the payoff is bilinear in the two
// turn rates, so the max-min is attained at the four bang-bang corners; for
// each corner the flux f . p upwinds every axis against its advection
// direction (the semi-discrete evolution V_t = f . p propagates information
// from the +f side, so f_k > 0 selects the forward difference).  Each corner
// flux is non-decreasing in every neighbour value and the CFL bound keeps the
// diagonal non-negative, so the update is monotone: values never increase and
// the sublevel set only grows.  Unlike a global Lax-Friedrichs jump term the
// upwind flux adds no artificial dissipation, which would otherwise stall the
// front where the interface curvature is steep.  Non-periodic faces use
// linear-extrapolation ghosts (one-sided slopes).  When out is null only the
// residual is computed.  res_per_plane[k] receives the max update magnitude
// of plane k, making the reduction independent of the parallel chunking.
void sweep_planes(const Kernel& kp, const double* in, double* out, int k0,
                  int k1, double* res_per_plane) {
  const std::size_t plane = static_cast<std::size_t>(kp.nx) * kp.ny;
  for (int k = k0; k < k1; ++k) {
    const double cth = kp.cth[k];
    const double sth = kp.sth[k];
    const double* up = in + plane * ((k + 1) % kp.nth);
    const double* dn = in + plane * ((k + kp.nth - 1) % kp.nth);
    double res = 0.0;
    for (int j = 0; j < kp.ny; ++j) {
      const double y = kp.ys[j];
      const std::size_t rowoff = static_cast<std::size_t>(j) * kp.nx;
      const double* row = in + plane * k + rowoff;
      const double* south = j > 0 ? row - kp.nx : nullptr;
      const double* north = j < kp.ny - 1 ? row + kp.nx : nullptr;
      const double* rup = up + rowoff;
      const double* rdn = dn + rowoff;
      double* orow = out ? out + plane * k + rowoff : nullptr;
      for (int i = 0; i < kp.nx; ++i) {
        const double c = row[i];
        const double vw = i > 0 ? row[i - 1] : 2.0 * c - row[i + 1];
        const double ve = i < kp.nx - 1 ? row[i + 1] : 2.0 * c - row[i - 1];
        const double vs = south ? south[i] : 2.0 * c - north[i];
        const double vn = north ? north[i] : 2.0 * c - south[i];
        const double dxm = (c - vw) * kp.inv_dx;
        const double dxp = (ve - c) * kp.inv_dx;
        const double dym = (c - vs) * kp.inv_dy;
        const double dyp = (vn - c) * kp.inv_dy;
        const double dtm = (c - rdn[i]) * kp.inv_dth;
        const double dtp = (rup[i] - c) * kp.inv_dth;
        const double ax = kp.v * cth - kp.v;
        const double ay = kp.v * sth;
        const double x = kp.xs[i];
        double ham = -std::numeric_limits<double>::infinity();
        for (const double wi : {kp.w, -kp.w}) {
          const double f0 = ax + wi * y;
          const double f1 = ay - wi * x;
          const double base = f0 * (f0 > 0.0 ? dxp : dxm) +
                              f1 * (f1 > 0.0 ? dyp : dym);
          double worst = std::numeric_limits<double>::infinity();
          for (const double wj : {kp.w, -kp.w}) {
            const double f2 = wj - wi;
            worst = std::min(worst, base + f2 * (f2 > 0.0 ? dtp : dtm));
          }
          ham = std::max(ham, worst);
        }
        const double upd = kp.dtau * std::min(0.0, ham);
        if (orow) orow[i] = c + upd;
        res = std::max(res, -upd);
      }
    }
    res_per_plane[k] = res;
  }
}

void validate(const ValueField& field, const DynamicsParams& params) {
  if (field.grid.periodic != std::array<bool, 3>{false, false, true}) {
    throw std::invalid_argument("solver expects periodicity (no, no, yes)");
  }
  if (field.values.size() != field.grid.size()) {
    throw std::invalid_argument("value array does not match grid");
  }
  if (!(params.speed > 0.0) || !(params.max_turn_rate > 0.0)) {
    throw std::invalid_argument("dynamics parameters must be positive");
  }
}

}  // namespace

double hamiltonian(const Vec3& state, const Vec3& costate,
                   const DynamicsParams& params) {
  const double v = params.speed;
  const double w = params.max_turn_rate;
  const double cth = std::cos(state[2]);
  const double sth = std::sin(state[2]);
  return costate[0] * (v * cth - v) + costate[1] * v * sth +
         w * std::abs(costate[0] * state[1] - costate[1] * state[0] - costate[2]) -
         w * std::abs(costate[2]);
}

SolveStats solve_brs(ValueField& field, const DynamicsParams& params,
                     const SolveOptions& options) {
  validate(field, params);
  if (!(options.tolerance > 0.0) || options.max_iterations < 1 ||
      !(options.cfl > 0.0) || options.cfl > 1.0) {
    throw std::invalid_argument("bad solver options");
  }
  field.dynamics = params;
  const Kernel kp = make_kernel(field.grid, params, options.cfl);

  std::vector<double> next(field.values.size());
  std::vector<double> res_per_plane(kp.nth, 0.0);
  SolveStats stats;
  stats.time_step = kp.dtau;
  stats.residual = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= options.max_iterations; ++s) {
    const double* in = field.values.data();
    double* out = next.data();
    parallel_for(0, kp.nth, options.workers, [&](int lo, int hi) {
      sweep_planes(kp, in, out, lo, hi, res_per_plane.data());
    });
    field.values.swap(next);
    stats.sweeps = s;
    stats.residual =
        *std::max_element(res_per_plane.begin(), res_per_plane.end());
    stats.converged = stats.residual < options.tolerance;
    if (options.progress &&
        (s % std::max(1, options.progress_every) == 0 || stats.converged ||
         s == options.max_iterations)) {
      options.progress(s, stats.residual);
    }
    if (stats.converged) break;
  }
  field.converged = stats.converged;
  field.residual = stats.residual;
  return stats;
}

double residual_probe(const ValueField& field, const DynamicsParams& params,
                      double cfl, int workers) {
  validate(field, params);
  const Kernel kp = make_kernel(field.grid, params, cfl);
  std::vector<double> res_per_plane(kp.nth, 0.0);
  const double* in = field.values.data();
  parallel_for(0, kp.nth, workers, [&](int lo, int hi) {
    sweep_planes(kp, in, nullptr, lo, hi, res_per_plane.data());
  });
  return *std::max_element(res_per_plane.begin(), res_per_plane.end());
}

}  // namespace mvca
