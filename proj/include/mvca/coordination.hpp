#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "mvca/safety.hpp"

namespace mvca {

// Reward entry: finite value or the distinguished minus-infinity used on the
// diagonal.  Kept as a tagged type so minus-infinity never leaks into sums.
class Reward {
 public:
  static Reward neg_inf() { return Reward(); }
  static Reward finite(double v) {
    Reward r;
    r.neg_inf_ = false;
    r.value_ = v;
    return r;
  }

  bool is_neg_inf() const { return neg_inf_; }
  double value() const {
    assert(!neg_inf_);
    return value_;
  }

 private:
  bool neg_inf_ = true;
  double value_ = 0.0;
};

struct RewardMatrix {
  int n = 0;
  std::vector<Reward> cells;  // row-major

  static RewardMatrix make(int n) {
    RewardMatrix m;
    m.n = n;
    m.cells.assign(static_cast<std::size_t>(n) * n, Reward::neg_inf());
    return m;
  }
  Reward& at(int i, int j) { return cells[static_cast<std::size_t>(i) * n + j]; }
  const Reward& at(int i, int j) const {
    return cells[static_cast<std::size_t>(i) * n + j];
  }
};

// Fixed distinct priorities 1..n^2-n on the off-diagonal, 0 on the diagonal.
struct PriorityMatrix {
  int n = 0;
  std::vector<int> cells;  // row-major

  int at(int i, int j) const { return cells[static_cast<std::size_t>(i) * n + j]; }
};

// Assigns the highest priorities to the first superdiagonal wrapped cyclically
// ((0,1), (1,2), ..., (n-1,0) get n^2-n down to n^2-2n+1), then the next
// cyclic diagonal, and so on.  Reproduces the published 3-vehicle matrix.
PriorityMatrix priority_matrix(int n);

// c_ij = priority^2 when s_ij <= threshold, -1 otherwise, -inf on the
// diagonal.  safety is a row-major n*n matrix; +infinity entries mean "far".
RewardMatrix build_reward_matrix(const PriorityMatrix& priorities,
                                 const std::vector<double>& safety,
                                 double threshold);

// u[first] + u[second] <= 1 with cells given as {row, col}.
struct PairConstraint {
  std::array<int, 2> first{};
  std::array<int, 2> second{};
  friend bool operator==(const PairConstraint&, const PairConstraint&) = default;
};

// One coordination problem: maximize sum of c_ij * u_ij subject to
//   (a) u_ij + u_ji <= 1 for every pair,
//   (b) at most one assignment per row,
//   (c) u_ij binary, minus-infinity cells never selected,
// plus any extra pairwise constraints.
struct MipInstance {
  RewardMatrix rewards;
  std::vector<PairConstraint> extra;
};

// Binary avoidance assignment; u[i*n+j] = 1 means vehicle i avoids vehicle j.
struct ControlLogic {
  int n = 0;
  std::vector<std::uint8_t> u;  // row-major

  static ControlLogic make(int n) {
    ControlLogic c;
    c.n = n;
    c.u.assign(static_cast<std::size_t>(n) * n, 0);
    return c;
  }
  bool at(int i, int j) const { return u[static_cast<std::size_t>(i) * n + j] != 0; }
  void set(int i, int j, bool v) {
    u[static_cast<std::size_t>(i) * n + j] = v ? 1 : 0;
  }
  // Assigned column of row i, or -1.
  int target_of(int i) const {
    for (int j = 0; j < n; ++j) {
      if (at(i, j)) return j;
    }
    return -1;
  }
  friend bool operator==(const ControlLogic&, const ControlLogic&) = default;
};

struct MipSolution {
  ControlLogic assignment;
  double objective = 0.0;
};

// Single-avoidance merge for vehicles whose conflict set shares one avoidance
// control.  For every group G (size >= 2) of some vehicle i, each reward
// c_ij, j in G, is replaced by the group sum over the original row, and for
// every ordered pair (j, a) in G with j != a an extra constraint
// u_ji + u_ia <= 1 is added when the pre-replacement rewards had c_ij > c_ji.
// groups[i] lists vehicle i's control groups (as from common_control_sets).
MipInstance samv_modify(const RewardMatrix& rewards,
                        const std::vector<ControlGroups>& groups);

// Exact branch-and-bound over per-row choices.  Deterministic: among optima
// it returns the lexicographically smallest flattened assignment.
MipSolution solve_mip(const MipInstance& instance);

// True when the assignment satisfies constraints (a)-(c) and all extras.
bool satisfies(const MipInstance& instance, const ControlLogic& assignment);

// Uncoordinated baseline: every vehicle with a nonempty conflict set avoids
// its least-safe neighbor (ties to the smallest index); mutual avoidance is
// allowed.  safety as in build_reward_matrix.
ControlLogic baseline_assignment(const std::vector<double>& safety, int n,
                                 double threshold);

}  // namespace mvca
