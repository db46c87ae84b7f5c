#pragma once
// Decision-time prioritized tree-search MPC.
//
// The tree is grown branch by branch: every queue entry is an unexpanded
// (node, action) pair; expanding one costs exactly one model simulation.
// Under the best-first heuristic a branch's priority is sigma +
// gamma^depth * Q(state, action), where sigma is the discounted reward
// accumulated along the node's path; under the random heuristic priorities
// are uniform draws, which spreads the budget instead of following the
// value estimate.  Terminal children enter a separate pool keyed by their
// sigma.  Once the simulation budget (or the tree) is exhausted, the best
// terminal trajectory is preferred whenever its return matches or beats
// the best remaining branch estimate, and the chosen trajectory's root
// action is returned.  Final selection is always value-keyed, regardless
// of the expansion heuristic.
//
// A Model must provide:
//   using State = ...;                       (copyable handle)
//   int num_actions() const;
//   std::vector<double> q_values(const State&);          // expected Q
//   struct {State next; double reward; bool terminal;} step(const State&, int);

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

#include "setplan/rng.hpp"

namespace setplan::plan {

enum class Heuristic { kBestFirst, kRandom };

struct PlannerConfig {
  int budget = 5;           // model simulations per decision
  double gamma = 0.99;
  Heuristic heuristic = Heuristic::kBestFirst;
};

template <typename State>
struct PlanResult {
  int action = 0;            // root action of the chosen trajectory
  double value = 0;          // value estimate of the chosen trajectory
  bool from_terminal = false;
  int simulations = 0;
  // imagined states along the chosen trajectory (root first) and the
  // actions taken between them
  std::vector<State> states;
  std::vector<int> actions;
};

template <typename Model>
PlanResult<typename Model::State> plan(Model& model,
                                       const typename Model::State& s0,
                                       const PlannerConfig& cfg,
                                       rng::Stream* priority_rng) {
  using State = typename Model::State;
  const int A = model.num_actions();
  if (A <= 0) throw std::runtime_error("planning over an empty action set");
  if (cfg.heuristic == Heuristic::kRandom && priority_rng == nullptr)
    throw std::runtime_error("random heuristic needs a priority stream");

  struct Node {
    State state;
    int parent = -1;
    int action_in = -1;  // action that led here
    int depth = 0;
    double sigma = 0;    // discounted reward along the path
  };
  struct Entry {
    int node = 0;
    int action = 0;
    double priority = 0;  // expansion key (heuristic-dependent)
    double value = 0;     // sigma + gamma^depth * Q; final-selection key
    std::int64_t order = 0;
  };

  std::deque<Node> nodes;
  nodes.push_back(Node{s0, -1, -1, 0, 0.0});

  std::vector<Entry> queue;  // max-heap by (priority, -order)
  std::int64_t order = 0;
  auto entry_less = [](const Entry& a, const Entry& b) {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.order > b.order;  // earlier insertion wins ties
  };
  auto push_branches = [&](int node_idx) {
    const Node& n = nodes[size_t(node_idx)];
    auto q = model.q_values(n.state);
    const double scale = std::pow(cfg.gamma, n.depth);
    for (int a = 0; a < A; ++a) {
      Entry e;
      e.node = node_idx;
      e.action = a;
      e.value = n.sigma + scale * q[size_t(a)];
      e.priority = cfg.heuristic == Heuristic::kBestFirst
                       ? e.value
                       : priority_rng->uniform();
      e.order = order++;
      queue.push_back(e);
      std::push_heap(queue.begin(), queue.end(), entry_less);
    }
  };
  push_branches(0);

  struct TerminalRef {
    int node = 0;
    double value = 0;
  };
  std::vector<TerminalRef> terminals;

  PlanResult<State> result;
  while (result.simulations < cfg.budget && !queue.empty()) {
    std::pop_heap(queue.begin(), queue.end(), entry_less);
    Entry e = queue.back();
    queue.pop_back();
    ++result.simulations;

    const Node& parent = nodes[size_t(e.node)];
    auto step = model.step(parent.state, e.action);
    Node child;
    child.state = step.next;
    child.parent = e.node;
    child.action_in = e.action;
    child.depth = parent.depth + 1;
    child.sigma = parent.sigma + std::pow(cfg.gamma, parent.depth) * step.reward;
    nodes.push_back(std::move(child));
    const int child_idx = int(nodes.size()) - 1;

    if (step.terminal) {
      terminals.push_back({child_idx, nodes.back().sigma});
    } else {
      push_branches(child_idx);
    }
  }

  // Final selection is value-keyed: best expandable branch...
  const Entry* best_entry = nullptr;
  for (const auto& e : queue)
    if (best_entry == nullptr || e.value > best_entry->value ||
        (e.value == best_entry->value && e.order < best_entry->order))
      best_entry = &e;
  // ...vs best terminal trajectory (preferred on ties)
  const TerminalRef* best_term = nullptr;
  for (const auto& t : terminals)
    if (best_term == nullptr || t.value > best_term->value)
      best_term = &t;

  int chosen_node;
  int pending_action = -1;
  if (best_term != nullptr &&
      (best_entry == nullptr || best_term->value >= best_entry->value)) {
    chosen_node = best_term->node;
    result.value = best_term->value;
    result.from_terminal = true;
  } else if (best_entry != nullptr) {
    chosen_node = best_entry->node;
    pending_action = best_entry->action;
    result.value = best_entry->value;
  } else {
    throw std::runtime_error("planner ran out of branches and terminals");
  }

  // Backtrack the chosen trajectory to the root.
  std::vector<int> path;
  for (int n = chosen_node; n != -1; n = nodes[size_t(n)].parent)
    path.push_back(n);
  std::reverse(path.begin(), path.end());
  for (size_t i = 0; i < path.size(); ++i) {
    result.states.push_back(nodes[size_t(path[i])].state);
    if (i + 1 < path.size())
      result.actions.push_back(nodes[size_t(path[i + 1])].action_in);
  }
  if (pending_action != -1) result.actions.push_back(pending_action);
  result.action = result.actions.empty() ? pending_action : result.actions[0];
  if (result.action < 0)
    throw std::runtime_error("empty chosen trajectory");
  return result;
}

}  // namespace setplan::plan
