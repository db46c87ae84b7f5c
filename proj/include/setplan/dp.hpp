#pragma once
// Exact dynamic programming over gridworld states.
//
// Value iteration on the discounted infinite-horizon control problem over
// (x, y, direction, has_key), run until the value table stops changing
// bit-for-bit (guaranteed: with gamma < 1 the iteration is a contraction
// and the reachable value set is finite).  Provides the optimal value of
// every state and the set of optimal actions used to grade agent behavior.
// In states with value 0 the goal is unreachable and no action is better
// than any other, so every action counts as optimal there.

#include <vector>

#include "setplan/grid.hpp"

namespace setplan::oracle {

struct DPResult {
  int size = 0;
  env::Variant variant = env::Variant::kNavigation;
  double gamma = 0.99;
  // indexed by ((y*S + x)*4 + dir)*2 + has_key
  std::vector<double> value;
  std::vector<std::vector<int>> optimal_actions;
  int sweeps = 0;  // sweeps until the bitwise fixed point

  int encode(int x, int y, int dir, int key) const {
    return ((y * size + x) * 4 + dir) * 2 + key;
  }
  double state_value(const env::GridWorldInstance& s) const {
    return value[size_t(encode(s.agent_x, s.agent_y, s.agent_dir,
                               s.has_key ? 1 : 0))];
  }
  const std::vector<int>& state_optimal(const env::GridWorldInstance& s) const {
    return optimal_actions[size_t(encode(s.agent_x, s.agent_y, s.agent_dir,
                                         s.has_key ? 1 : 0))];
  }
  bool is_optimal(const env::GridWorldInstance& s, int action) const;
};

// One-step lookahead value r + gamma * (1 - terminated) * V(next).
double q_value(const DPResult& dp, const env::GridWorldInstance& s,
               int action);

DPResult dp_solve(const env::GridWorldInstance& instance, env::Variant variant,
                  double gamma = 0.99);

}  // namespace setplan::oracle
