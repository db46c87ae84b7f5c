#pragma once
// Procedurally generated gridworlds.
//
// A world is an S x S cell grid whose outer ring is wall; the playable
// interior is [1, S-2] x [1, S-2].  The agent starts on the left interior
// column facing east and must reach the goal on the right interior column;
// lava is sprinkled into the columns strictly between those two with
// per-cell probability `difficulty`.  The transposed layout (used for
// out-of-distribution evaluation) rotates the whole protocol: start on the
// top row facing south, goal on the bottom row, lava in the rows between.
//
// Variants:
//   navigation    3 actions: turn left, turn right, forward
//   turnforward   4 composite actions that always attempt a forward move:
//                 forward / left+forward / right+forward / reverse+forward
//   color         navigation, but every cell carries a visual color that is
//                 resampled uniformly on every observe() call (pure noise)
//   keychest      navigation plus a key (+0.5, once) and a chest that
//                 terminates with +0.5 when entered holding the key and
//                 blocks like a wall otherwise
//
// Worlds are regenerated until the goal (and key/chest chain) is reachable;
// the number of rejected layouts is exposed for inspection.

#include <cstdint>
#include <string>
#include <vector>

#include "setplan/rng.hpp"

namespace setplan::env {

enum Cell : int {
  kEmpty = 0,
  kWall = 1,
  kLava = 2,
  kGoal = 3,
  kKey = 4,
  kChest = 5,
  kAgent = 6,  // appears only in observations, overlaying the agent's cell
};

// direction 0=east, 1=south, 2=west, 3=north; turn-left decrements mod 4
inline constexpr int kDX[4] = {1, 0, -1, 0};
inline constexpr int kDY[4] = {0, 1, 0, -1};

enum class Variant { kNavigation, kTurnForward, kColor, kKeyChest };

Variant variant_from_name(const std::string& name);
std::string variant_name(Variant v);

struct GridConfig {
  int size = 6;
  double difficulty = 0.35;
  Variant variant = Variant::kNavigation;
  bool transposed = false;  // out-of-distribution placement
  int num_colors = 6;
};

// Full simulator state.  `grid` is row-major (index y*S + x) and never
// contains kAgent; the agent position is tracked separately.
struct GridWorldInstance {
  int size = 0;
  std::vector<int> grid;
  int agent_x = 0, agent_y = 0, agent_dir = 0;
  int goal_x = 0, goal_y = 0;
  bool has_key = false;

  int at(int x, int y) const { return grid[size_t(y * size + x)]; }
  void set(int x, int y, int c) { grid[size_t(y * size + x)] = c; }
};

// What a policy sees: each cell is a 3-integer code (object, color, state).
// The cell at index i is at (x,y) = (i % size, i / size).  The agent's cell
// reports object kAgent with its direction in the state channel; every other
// cell reports its Cell code with state 0.
struct Observation {
  int size = 0;
  std::vector<int> object;
  std::vector<int> color;
  std::vector<int> state;
};
inline constexpr int kNumObjectIds = 7;  // Cell codes 0..6
inline constexpr int kNumColorIds = 6;
inline constexpr int kNumStateIds = 4;  // agent direction; 0 elsewhere

struct StepResult {
  double reward = 0;
  bool terminated = false;  // absorbing outcome (lava, goal, opened chest)
  bool truncated = false;   // step limit hit; not a model termination signal
};

// Pure single-step dynamics shared by the environment and exact planning.
// Applies `action` to `s` in place and reports reward/termination.
StepResult apply_action(GridWorldInstance& s, Variant variant, int action);

// The cell the agent would attempt to enter (after any rotation the action
// performs).  Used for ground-truth relevance sets in metrics.
int attempted_destination(const GridWorldInstance& s, Variant variant,
                          int action);

int num_actions(Variant v);

class GridWorld {
 public:
  GridWorld(const GridConfig& config, rng::Stream* env_rng);

  // Generate a fresh solvable layout and reset the episode.
  void reset();

  // Static-world mode: keep replaying the current layout (including the
  // start pose) on every subsequent reset instead of generating fresh ones.
  void freeze_layout();

  // Enter static-world mode on a given layout (used when evaluating or
  // resuming a static-world run).
  void adopt_layout(const GridWorldInstance& layout);
  const GridWorldInstance* frozen_layout() const {
    return frozen_ ? &frozen_state_ : nullptr;
  }
  StepResult step(int action);
  Observation observe();

  const GridWorldInstance& instance() const { return state_; }
  const GridConfig& config() const { return config_; }
  int step_limit() const { return 4 * config_.size * config_.size; }
  int steps_taken() const { return steps_; }
  bool done() const { return done_; }
  std::int64_t rejected_layouts() const { return rejected_; }
  int actions() const { return num_actions(config_.variant); }

  // Renders the current state; '#' wall, '.' empty, 'L' lava, 'G' goal,
  // 'K' key, 'C' chest, '>v<^' agent by direction.
  std::string to_text() const;

 private:
  bool generate_candidate();
  GridConfig config_;
  rng::Stream* env_rng_;
  rng::Stream color_rng_;
  GridWorldInstance state_;
  GridWorldInstance frozen_state_;
  bool frozen_ = false;
  int steps_ = 0;
  bool done_ = false;
  std::int64_t rejected_ = 0;
};

// Goal (and key->chest chain) reachability by breadth-first search over
// (x, y, dir, has_key).  This is the generation filter; the graded optimal
// policy lives in dp.hpp.
bool solvable(const GridWorldInstance& s, Variant variant);

}  // namespace setplan::env
