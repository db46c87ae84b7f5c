#pragma once
// End-to-end training loop: environment interaction with planning-based
// acting, prioritized replay, the combined loss, schedules, periodic
// evaluation, and checkpointing.
//
// One Trainer owns one seeded run.  The behavior policy is epsilon-greedy
// over the agent's decision rule (tree-search MPC for model-based agents,
// greedy value argmax for model-free).  Every `train_period` interactions
// one Adam step is taken on a 64-sample batch once `warmup` transitions
// are stored.  The TD loss is a KL divergence against the categorical
// projection of the double-DQN scalar target; importance weights apply to
// the TD term only.  Model losses (feature dynamics, reward, termination,
// optional inverse action) are added unweighted.
//
// Schedules ported to desk-scale budgets: the exploration horizon and the
// target-network period scale by rho = total_interactions / 2.5e6 so the
// schedule shape matches the full-scale reference at any budget.

#include <cstdint>
#include <string>
#include <vector>

#include "setplan/agent.hpp"
#include "setplan/metrics.hpp"
#include "setplan/planner.hpp"
#include "setplan/replay.hpp"

namespace setplan::train {

struct TrainConfig {
  agent::AgentConfig agent;
  env::GridConfig env;  // training orientation; transposed used for OOD eval
  std::uint64_t seed = 1;
  std::int64_t total_interactions = 200000;
  int train_period = 4;
  int batch = 64;
  int warmup = 10000;
  double gamma = 0.99;
  ad::AdamConfig adam;
  double eps_start = 0.95, eps_end = 0.01;
  double eval_eps = 1e-3;
  std::int64_t eps_horizon = 0;    // 0 -> 1e6 * rho
  std::int64_t target_period = 0;  // train steps; 0 -> 8000 * rho
  std::int64_t eval_period = 10000;
  int eval_episodes = 50;
  int replay_capacity = 0;  // 0 -> min(total_interactions, 1e6)
  double per_alpha = 0.6, per_beta = 0.4;
  int plan_budget = 5;
  bool wm_staged = false;    // train model alone first, then value only
  double wm_fraction = 0.4;  // share of the budget spent in stage 1
  bool static_world = false; // one fixed world for the whole run
  bool eval_ood = true;
  double ood_difficulty = 0.35;
  bool noplan_eval = false;  // skip planning in OOD evaluation
  std::string out_dir;       // empty -> keep results in memory only
  std::int64_t checkpoint_period = 0;  // interactions; 0 -> final params only
  bool resume = false;
  bool quiet = false;

  double rho() const { return double(total_interactions) / 2.5e6; }
  std::int64_t effective_eps_horizon() const {
    return eps_horizon > 0 ? eps_horizon
                           : std::int64_t(1e6 * rho() + 0.5);
  }
  std::int64_t effective_target_period() const {
    if (target_period > 0) return target_period;
    const auto p = std::int64_t(8000 * rho() + 0.5);
    return p > 0 ? p : 1;
  }
  int effective_replay_capacity() const {
    if (replay_capacity > 0) return replay_capacity;
    return int(std::min<std::int64_t>(total_interactions, 1000000));
  }
};

double epsilon_at(const TrainConfig& cfg, std::int64_t interactions);

struct LossBundle {
  double td = 0, dyn = 0, reward = 0, term = 0, act = 0;
  double total() const { return td + dyn + reward + term + act; }
};

struct TrainResult {
  std::vector<metrics::EvalRecord> records;
  std::int64_t interactions = 0;
  std::int64_t train_steps = 0;
  std::int64_t episodes = 0;
  std::string run_dir;
};

class Trainer {
 public:
  explicit Trainer(TrainConfig cfg);
  TrainResult run();

  // One gradient step on a given batch; exposed for tests.
  LossBundle train_step(const std::vector<int>& indices,
                        const std::vector<double>& weights);

  agent::Agent<float>& online() { return online_; }
  agent::Agent<float>& target() { return target_; }
  replay::PrioritizedReplay& buffer() { return buffer_; }
  const TrainConfig& config() const { return cfg_; }
  std::int64_t interactions() const { return interactions_; }

  // Evaluate the current parameters on one setting.
  metrics::EvalRecord evaluate(const std::string& setting, bool transposed,
                               double difficulty, plan::Heuristic heuristic,
                               bool noplan, int episodes,
                               std::uint64_t stream_salt);

  void save_checkpoint(const std::string& path, bool include_replay);
  void load_checkpoint(const std::string& path);

  // Run the configured evaluation settings once on the current parameters.
  std::vector<metrics::EvalRecord> eval_now() {
    run_evals();
    return records_;
  }

  // Decide one action greedily (planning agents search, others argmax).
  int decide(const env::Observation& obs, plan::Heuristic heuristic,
             bool noplan, rng::Stream* priority_rng);

 private:
  void interact_once();
  void run_evals();
  void write_manifest(const std::string& status);
  bool wm_stage1() const {
    return cfg_.wm_staged &&
           interactions_ <
               std::int64_t(cfg_.wm_fraction * double(cfg_.total_interactions));
  }

  TrainConfig cfg_;
  agent::Agent<float> online_;
  agent::Agent<float> target_;
  replay::PrioritizedReplay buffer_;
  rng::Stream env_stream_;  // must outlive world_, which holds a pointer
  env::GridWorld world_;
  rng::Stream explore_stream_;
  rng::Stream shift_stream_;
  rng::Stream sample_stream_;
  rng::Stream noise_stream_;
  std::int64_t interactions_ = 0;
  std::int64_t train_steps_ = 0;
  std::int64_t episodes_ = 0;
  std::int64_t next_eval_ = 0;
  bool episode_open_ = false;
  env::Observation current_obs_;
  std::vector<metrics::EvalRecord> records_;
  LossBundle loss_accum_;
  std::int64_t loss_accum_n_ = 0;
};

}  // namespace setplan::train
