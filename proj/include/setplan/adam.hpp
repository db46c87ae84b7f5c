#pragma once
// Named parameter registry with Adam updates.
//
// Networks obtain their weight tensors from a store at construction; a
// target network is simply a second network bound to a second store that is
// refreshed with copy_values_from().  The optional name filter on
// adam_step() supports training phases that update only a subset of the
// parameters (the step counter is per-parameter so bias correction stays
// consistent under filtering).

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "setplan/tensor.hpp"

namespace setplan::ad {

struct AdamConfig {
  double lr = 2.5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1.5e-4;
};

template <typename T>
class ParameterStore {
 public:
  struct Entry {
    Tensor<T> value;
    std::vector<T> m, v;
    std::int64_t step = 0;
  };

  Tensor<T> create(const std::string& name, Shape shape) {
    if (entries_.count(name))
      throw std::runtime_error("parameter already exists: " + name);
    auto t = make_tensor<T>(std::move(shape), /*requires_grad=*/true);
    t->name = name;
    auto& e = entries_[name];
    e.value = t;
    e.m.assign(t->val.size(), T(0));
    e.v.assign(t->val.size(), T(0));
    order_.push_back(name);
    return t;
  }

  Tensor<T> get(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end())
      throw std::runtime_error("no such parameter: " + name);
    return it->second.value;
  }
  bool has(const std::string& name) const { return entries_.count(name) > 0; }

  // Registration order; deterministic across runs.
  const std::vector<std::string>& names() const { return order_; }
  Entry& entry(const std::string& name) { return entries_.at(name); }
  const Entry& entry(const std::string& name) const {
    return entries_.at(name);
  }

  std::int64_t total_size() const {
    std::int64_t n = 0;
    for (const auto& [_, e] : entries_) n += e.value->size();
    return n;
  }

  void zero_grads() {
    for (auto& [_, e] : entries_) e.value->zero_grad();
  }

  // One Adam update from current gradients.  Parameters whose gradient was
  // never touched this step are skipped entirely.  `active` restricts the
  // update to names it accepts.
  void adam_step(const AdamConfig& cfg,
                 const std::function<bool(const std::string&)>& active = {}) {
    for (auto& name : order_) {
      if (active && !active(name)) continue;
      auto& e = entries_.at(name);
      auto& t = *e.value;
      if (t.grad.empty()) continue;
      e.step += 1;
      const double bc1 = 1.0 - std::pow(cfg.beta1, double(e.step));
      const double bc2 = 1.0 - std::pow(cfg.beta2, double(e.step));
      for (size_t i = 0; i < t.val.size(); ++i) {
        const double g = double(t.grad[i]);
        const double mi =
            cfg.beta1 * double(e.m[i]) + (1.0 - cfg.beta1) * g;
        const double vi =
            cfg.beta2 * double(e.v[i]) + (1.0 - cfg.beta2) * g * g;
        e.m[i] = T(mi);
        e.v[i] = T(vi);
        t.val[i] -= T(cfg.lr * (mi / bc1) /
                      (std::sqrt(vi / bc2) + cfg.eps));
      }
    }
  }

  // Overwrite this store's parameter values (not optimizer state) with
  // another store's.  Both must hold the same names and shapes.
  void copy_values_from(const ParameterStore& src) {
    if (order_.size() != src.order_.size())
      throw std::runtime_error("copy_values_from: store layout mismatch");
    for (auto& name : order_) {
      auto& dst = entries_.at(name);
      const auto& s = src.entries_.at(name);
      if (dst.value->shape != s.value->shape)
        throw std::runtime_error("copy_values_from: shape mismatch at " +
                                 name);
      dst.value->val = s.value->val;
    }
  }

 private:
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
};

}  // namespace setplan::ad
