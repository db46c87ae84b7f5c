#pragma once
// Prioritized experience replay with proportional sampling.
//
// Priorities are stored as p^alpha in a sum tree; sampling draws a uniform
// mass in [0, total) per slot.  Importance weights (N * P(i))^-beta,
// normalized by their batch maximum, are applied by the caller to the TD
// loss only.  New transitions enter at the current maximum raw priority so
// they are replayed at least once soon after insertion.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "setplan/grid.hpp"
#include "setplan/rng.hpp"

namespace setplan::replay {

struct Transition {
  env::Observation obs;
  int action = 0;
  float reward = 0;
  bool terminated = false;
  env::Observation next_obs;
};

class SumTree {
 public:
  explicit SumTree(int capacity) : capacity_(capacity) {
    leaves_ = 1;
    while (leaves_ < capacity) leaves_ *= 2;
    tree_.assign(size_t(2 * leaves_), 0.0);
  }

  void set(int idx, double value) {
    int node = leaves_ + idx;
    tree_[size_t(node)] = value;
    for (node /= 2; node >= 1; node /= 2)
      tree_[size_t(node)] =
          tree_[size_t(2 * node)] + tree_[size_t(2 * node + 1)];
  }

  double get(int idx) const { return tree_[size_t(leaves_ + idx)]; }
  double total() const { return tree_[1]; }

  // leaf whose cumulative interval contains `mass` in [0, total)
  int find(double mass) const {
    int node = 1;
    while (node < leaves_) {
      const double left = tree_[size_t(2 * node)];
      if (mass < left) {
        node = 2 * node;
      } else {
        mass -= left;
        node = 2 * node + 1;
      }
    }
    return node - leaves_;
  }

  int capacity() const { return capacity_; }

 private:
  int capacity_, leaves_;
  std::vector<double> tree_;
};

struct ReplaySample {
  std::vector<int> indices;
  std::vector<double> weights;  // normalized importance weights
};

class PrioritizedReplay {
 public:
  PrioritizedReplay(int capacity, double alpha, double beta)
      : capacity_(capacity),
        alpha_(alpha),
        beta_(beta),
        tree_(capacity),
        raw_priority_(size_t(capacity), 0.0) {}

  void add(Transition t) {
    const int idx = next_;
    if (int(items_.size()) < capacity_) {
      items_.push_back(std::move(t));
    } else {
      items_[size_t(idx)] = std::move(t);
    }
    raw_priority_[size_t(idx)] = max_priority_;
    tree_.set(idx, std::pow(max_priority_, alpha_));
    next_ = (next_ + 1) % capacity_;
  }

  ReplaySample sample(int batch, rng::Stream& stream) {
    if (size() == 0) throw std::runtime_error("sampling from empty replay");
    ReplaySample s;
    s.indices.resize(size_t(batch));
    s.weights.resize(size_t(batch));
    const double total = tree_.total();
    for (int i = 0; i < batch; ++i)
      s.indices[size_t(i)] = tree_.find(stream.uniform() * total);
    double wmax = 0;
    for (int i = 0; i < batch; ++i) {
      const double prob = tree_.get(s.indices[size_t(i)]) / total;
      s.weights[size_t(i)] = std::pow(double(size()) * prob, -beta_);
      wmax = std::max(wmax, s.weights[size_t(i)]);
    }
    for (auto& w : s.weights) w /= wmax;
    return s;
  }

  void update_priority(int idx, double priority) {
    const double p = std::max(priority, kMinPriority);
    raw_priority_[size_t(idx)] = p;
    max_priority_ = std::max(max_priority_, p);
    tree_.set(idx, std::pow(p, alpha_));
  }

  const Transition& at(int idx) const { return items_[size_t(idx)]; }
  int size() const { return int(items_.size()); }
  int capacity() const { return capacity_; }
  double raw_priority(int idx) const { return raw_priority_.at(size_t(idx)); }
  double max_priority() const { return max_priority_; }

  // bulk access for checkpointing
  const std::vector<Transition>& items() const { return items_; }
  int write_cursor() const { return next_; }
  void restore(std::vector<Transition> items,
               const std::vector<double>& priorities, int cursor,
               double max_priority) {
    if (items.size() != priorities.size())
      throw std::runtime_error("replay restore size mismatch");
    items_ = std::move(items);
    for (int i = 0; i < int(items_.size()); ++i) {
      raw_priority_[size_t(i)] = priorities[size_t(i)];
      tree_.set(i, std::pow(priorities[size_t(i)], alpha_));
    }
    next_ = cursor;
    max_priority_ = max_priority;
  }

  static constexpr double kMinPriority = 1e-6;

 private:
  int capacity_;
  double alpha_, beta_;
  SumTree tree_;
  std::vector<Transition> items_;
  std::vector<double> raw_priority_;
  int next_ = 0;
  double max_priority_ = 1.0;
};

}  // namespace setplan::replay
