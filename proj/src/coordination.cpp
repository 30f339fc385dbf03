#include "mvca/coordination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mvca {

namespace {

void check_n(int n) {
  if (n < 2 || n > 16) {
    throw std::invalid_argument("vehicle count must be in [2, 16]");
  }
}

// c_ij > c_ji with minus-infinity below everything.
bool reward_greater(const Reward& a, const Reward& b) {
  if (a.is_neg_inf()) return false;
  if (b.is_neg_inf()) return true;
  return a.value() > b.value();
}

PairConstraint canonical(std::array<int, 2> a, std::array<int, 2> b) {
  if (b < a) std::swap(a, b);
  return PairConstraint{a, b};
}

}  // namespace

PriorityMatrix priority_matrix(int n) {
  check_n(n);
  PriorityMatrix m;
  m.n = n;
  m.cells.assign(static_cast<std::size_t>(n) * n, 0);
  // Walk cyclic superdiagonals: offset 1 holds the most urgent avoidance
  // relations, each next offset the next tier; within a tier rows ascend.
  int next = n * n - n;
  for (int offset = 1; offset < n; ++offset) {
    for (int i = 0; i < n; ++i) {
      int j = (i + offset) % n;
      m.cells[static_cast<std::size_t>(i) * n + j] = next--;
    }
  }
  return m;
}

RewardMatrix build_reward_matrix(const PriorityMatrix& priorities,
                                 const std::vector<double>& safety,
                                 double threshold) {
  const int n = priorities.n;
  check_n(n);
  if (safety.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("safety matrix size mismatch");
  }
  RewardMatrix m = RewardMatrix::make(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;  // diagonal stays minus-infinity
      double s = safety[static_cast<std::size_t>(i) * n + j];
      double p = static_cast<double>(priorities.at(i, j));
      m.at(i, j) = s <= threshold ? Reward::finite(p * p) : Reward::finite(-1.0);
    }
  }
  return m;
}

MipInstance samv_modify(const RewardMatrix& rewards,
                        const std::vector<ControlGroups>& groups) {
  const int n = rewards.n;
  if (static_cast<int>(groups.size()) != n) {
    throw std::invalid_argument("one group list per vehicle required");
  }
  MipInstance inst{rewards, {}};
  for (int i = 0; i < n; ++i) {
    for (const auto& group : groups[i]) {
      if (static_cast<int>(group.size()) < 2) continue;
      double sum = 0.0;
      for (int a : group) {
        if (a < 0 || a >= n || a == i || rewards.at(i, a).is_neg_inf()) {
          throw std::invalid_argument("control group member without reward");
        }
        sum += rewards.at(i, a).value();
      }
      for (int j : group) inst.rewards.at(i, j) = Reward::finite(sum);
      // Gate on the pre-replacement rewards: only a pair the merged vehicle
      // outranks forces the outranked side to pick one avoidance at a time.
      for (int j : group) {
        if (!reward_greater(rewards.at(i, j), rewards.at(j, i))) continue;
        for (int a : group) {
          if (a == j) continue;
          PairConstraint c = canonical({j, i}, {i, a});
          if (std::find(inst.extra.begin(), inst.extra.end(), c) ==
              inst.extra.end()) {
            inst.extra.push_back(c);
          }
        }
      }
    }
  }
  return inst;
}

bool satisfies(const MipInstance& instance, const ControlLogic& assignment) {
  const int n = instance.rewards.n;
  if (assignment.n != n) return false;
  for (int i = 0; i < n; ++i) {
    int row_sum = 0;
    for (int j = 0; j < n; ++j) {
      if (!assignment.at(i, j)) continue;
      if (instance.rewards.at(i, j).is_neg_inf()) return false;
      ++row_sum;
    }
    if (row_sum > 1) return false;
    for (int j = i + 1; j < n; ++j) {
      if (assignment.at(i, j) && assignment.at(j, i)) return false;
    }
  }
  for (const auto& c : instance.extra) {
    if (assignment.at(c.first[0], c.first[1]) &&
        assignment.at(c.second[0], c.second[1])) {
      return false;
    }
  }
  return true;
}

namespace {

struct Search {
  int n = 0;
  const RewardMatrix* rewards = nullptr;
  // Columns per row in visiting order (lexicographically ascending flattened
  // assignments: no assignment first, then the highest column index).  Only
  // strictly positive rewards appear; a zero or negative selection can always
  // be dropped without lowering the objective, and dropping is both feasible
  // and lexicographically smaller.
  std::vector<std::vector<int>> options;
  std::vector<double> suffix_bound;          // best-case gain from row r on
  std::vector<std::vector<int>> blocked_by;  // per cell: cells excluding it
  std::vector<std::uint8_t> selected;
  std::vector<std::uint8_t> best;
  double best_objective = 0.0;
  bool have_best = false;

  void run(int row, double value) {
    if (row == n) {
      if (!have_best || value > best_objective) {
        best_objective = value;
        best = selected;
        have_best = true;
      }
      return;
    }
    if (have_best && value + suffix_bound[row] <= best_objective) return;
    run(row + 1, value);  // leave this row unassigned
    for (int j : options[row]) {
      const int cell = row * n + j;
      bool free = true;
      for (int other : blocked_by[cell]) {
        if (selected[other]) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      selected[cell] = 1;
      run(row + 1, value + rewards->at(row, j).value());
      selected[cell] = 0;
    }
  }
};

}  // namespace

MipSolution solve_mip(const MipInstance& instance) {
  const int n = instance.rewards.n;
  check_n(n);
  Search s;
  s.n = n;
  s.rewards = &instance.rewards;
  s.options.resize(n);
  s.suffix_bound.assign(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = n - 1; j >= 0; --j) {
      if (j == i || instance.rewards.at(i, j).is_neg_inf()) continue;
      if (instance.rewards.at(i, j).value() > 0.0) s.options[i].push_back(j);
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double row_max = 0.0;
    for (int j : s.options[i]) {
      row_max = std::max(row_max, instance.rewards.at(i, j).value());
    }
    s.suffix_bound[i] = s.suffix_bound[i + 1] + row_max;
  }
  s.blocked_by.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      s.blocked_by[i * n + j].push_back(j * n + i);
      s.blocked_by[j * n + i].push_back(i * n + j);
    }
  }
  for (const auto& c : instance.extra) {
    for (const auto& cell : {c.first, c.second}) {
      if (cell[0] < 0 || cell[0] >= n || cell[1] < 0 || cell[1] >= n ||
          cell[0] == cell[1]) {
        throw std::invalid_argument("constraint cell out of range");
      }
    }
    int a = c.first[0] * n + c.first[1];
    int b = c.second[0] * n + c.second[1];
    s.blocked_by[a].push_back(b);
    s.blocked_by[b].push_back(a);
  }
  s.selected.assign(static_cast<std::size_t>(n) * n, 0);
  s.run(0, 0.0);

  MipSolution out;
  out.assignment.n = n;
  out.assignment.u = s.best;
  out.objective = s.best_objective;
  return out;
}

ControlLogic baseline_assignment(const std::vector<double>& safety, int n,
                                 double threshold) {
  check_n(n);
  if (safety.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("safety matrix size mismatch");
  }
  ControlLogic u = ControlLogic::make(n);
  for (int i = 0; i < n; ++i) {
    int pick = -1;
    double level = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = safety[static_cast<std::size_t>(i) * n + j];
      if (s <= threshold && s < level) {
        pick = j;
        level = s;
      }
    }
    if (pick >= 0) u.set(i, pick, true);
  }
  return u;
}

}  // namespace mvca
