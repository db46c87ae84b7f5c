#pragma once
// Dense row-major tensors for the reverse-mode engine.
//
// A Tensor is a shared handle; ops return fresh tensors and record closures
// on the tape that scatter output gradients back into input gradients.
// Gradients are allocated lazily (first touch) and accumulate additively.

#include <cassert>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace setplan::ad {

using Shape = std::vector<int>;

inline std::int64_t numel(const Shape& s) {
  std::int64_t n = 1;
  for (int d : s) n *= d;
  return n;
}

inline std::string shape_str(const Shape& s) {
  std::string out = "[";
  for (size_t i = 0; i < s.size(); ++i) {
    out += std::to_string(s[i]);
    if (i + 1 < s.size()) out += ",";
  }
  return out + "]";
}

template <typename T>
struct TensorData {
  Shape shape;
  std::vector<T> val;
  std::vector<T> grad;  // empty until touched
  bool requires_grad = false;
  std::string name;  // set for parameters; empty for intermediates

  std::int64_t size() const { return std::int64_t(val.size()); }
  int dim(int i) const {
    if (i < 0) i += int(shape.size());
    return shape[size_t(i)];
  }
  int rank() const { return int(shape.size()); }

  void ensure_grad() {
    if (grad.empty()) grad.assign(val.size(), T(0));
  }
  void zero_grad() {
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), T(0));
  }
};

template <typename T>
using Tensor = std::shared_ptr<TensorData<T>>;

template <typename T>
Tensor<T> make_tensor(Shape shape, bool requires_grad = false) {
  auto t = std::make_shared<TensorData<T>>();
  t->shape = std::move(shape);
  t->val.assign(size_t(numel(t->shape)), T(0));
  t->requires_grad = requires_grad;
  return t;
}

template <typename T>
Tensor<T> make_tensor(Shape shape, std::vector<T> vals,
                      bool requires_grad = false) {
  auto t = std::make_shared<TensorData<T>>();
  t->shape = std::move(shape);
  assert(std::int64_t(vals.size()) == numel(t->shape));
  t->val = std::move(vals);
  t->requires_grad = requires_grad;
  return t;
}

template <typename T>
Tensor<T> scalar_tensor(T v) {
  return make_tensor<T>(Shape{1}, std::vector<T>{v});
}

// Value copy that the tape will never write gradients into.
template <typename T>
Tensor<T> stop_gradient(const Tensor<T>& x) {
  auto t = std::make_shared<TensorData<T>>();
  t->shape = x->shape;
  t->val = x->val;
  t->requires_grad = false;
  return t;
}

}  // namespace setplan::ad
