#pragma once
// Reverse-mode tape.
//
// Ops push one closure per node in execution order; backward() seeds the
// scalar loss gradient with 1 and runs the closures in reverse.  A NoGrad
// scope suspends recording entirely, which also tells ops they may skip
// gradient bookkeeping (used for target-network evaluation and planning).

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "setplan/tensor.hpp"

namespace setplan::ad {

// Type-erased move-only nullary callable (backward closures move-capture
// their saved activations, which std::function cannot hold).
class BackwardFn {
 public:
  template <typename F>
  BackwardFn(F&& f)
      : impl_(std::make_unique<Impl<std::decay_t<F>>>(std::forward<F>(f))) {}
  void operator()() { impl_->call(); }

 private:
  struct Base {
    virtual void call() = 0;
    virtual ~Base() = default;
  };
  template <typename F>
  struct Impl final : Base {
    explicit Impl(F&& f) : fn(std::move(f)) {}
    void call() override { fn(); }
    F fn;
  };
  std::unique_ptr<Base> impl_;
};

template <typename T>
class Tape {
 public:
  template <typename F>
  void record(F&& backward_fn) {
    if (recording_) nodes_.emplace_back(std::forward<F>(backward_fn));
  }
  bool recording() const { return recording_; }

  void backward(const Tensor<T>& loss) {
    if (loss->size() != 1)
      throw std::runtime_error("backward: loss must be scalar, got shape " +
                               shape_str(loss->shape));
    loss->ensure_grad();
    loss->grad[0] += T(1);
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) (*it)();
  }

  void clear() { nodes_.clear(); }
  size_t node_count() const { return nodes_.size(); }

  // RAII guard: while alive, nothing is recorded on this tape.
  class NoGrad {
   public:
    explicit NoGrad(Tape& tape) : tape_(tape), prev_(tape.recording_) {
      tape_.recording_ = false;
    }
    ~NoGrad() { tape_.recording_ = prev_; }
    NoGrad(const NoGrad&) = delete;
    NoGrad& operator=(const NoGrad&) = delete;

   private:
    Tape& tape_;
    bool prev_;
  };

 private:
  std::vector<BackwardFn> nodes_;
  bool recording_ = true;
};

}  // namespace setplan::ad
