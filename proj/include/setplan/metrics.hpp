#pragma once
// Evaluation quantities.
//
// The relevant/irrelevant partition of grid cells for one transition is
// computed from ground truth only: cells whose observed 3-integer code
// changed, plus the agent's cell and the cell its action attempted to
// enter (those two determine reward and termination even when nothing
// moves).  Relative L1 compares predicted and encoded next features,
// normalized by the mean feature magnitude of the target set, reported per
// partition.  Coverage is the fraction of relevant cells that receive
// nonzero semi-hard compressor weight from any (query, head) pair.

#include <optional>
#include <string>
#include <vector>

#include "setplan/grid.hpp"
#include "setplan/nets.hpp"

namespace setplan::metrics {

// Relevant cell indices for the transition (before, action) -> after.
std::vector<int> relevant_cells(const env::GridWorldInstance& before,
                                const env::GridWorldInstance& after,
                                env::Variant variant, int action);

struct RelativeL1 {
  std::optional<double> relevant;
  std::optional<double> irrelevant;
  double overall = 0;
};

// predicted/target: [1, m, 32] aligned sets (features compared, tails
// identical by construction and excluded).
template <typename T>
RelativeL1 relative_l1(const ad::Tensor<T>& predicted,
                       const ad::Tensor<T>& target,
                       const std::vector<int>& relevant);

// weights: [1, heads, n, m] attention weights from the compressor.
double coverage_ratio(const std::vector<float>& weights, int heads, int n,
                      int m, const std::vector<int>& relevant);

// Mean helper that tolerates empty accumulators.
struct Accumulator {
  double sum = 0;
  std::int64_t count = 0;
  void add(double v) {
    sum += v;
    ++count;
  }
  std::optional<double> mean() const {
    if (count == 0) return std::nullopt;
    return sum / double(count);
  }
};

struct EvalRecord {
  std::int64_t step = 0;           // interactions used so far
  std::string setting;             // e.g. "indist", "ood_random"
  double success_rate = 0;
  double mean_return = 0;
  double action_optimality = 0;    // fraction of decisions in DP-optimal set
  std::optional<double> rl1_relevant, rl1_irrelevant, rl1_overall;
  std::optional<double> coverage;
  int episodes = 0;

  static std::string csv_header();
  std::string csv_row() const;
  std::string json_row() const;
};

}  // namespace setplan::metrics
