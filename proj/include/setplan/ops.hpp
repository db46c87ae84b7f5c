#pragma once
// Differentiable primitives.
//
// Conventions:
//  * Tensors are row-major; ops that work on "rows" treat every leading axis
//    as batch and the last axis as features, so [B,m,d] and [B*m,d] behave
//    identically and explicit reshapes are rarely needed.
//  * Every output's requires_grad is the OR of its inputs'.  Backward
//    closures skip writes into tensors with requires_grad == false.
//  * Reductions across the object axis (attention weighted sums, softmax
//    denominators over keys, mean pooling) use the fixed-point accumulation
//    from invsum.hpp so results are bit-identical under object permutation.
//    Backward passes use plain float arithmetic; the exactness contract
//    covers forward evaluation only.

#include <vector>

#include "setplan/tape.hpp"
#include "setplan/tensor.hpp"

namespace setplan::ad {

// y = x @ w,  x: [..., p], w: [p, q] -> [..., q]
template <typename T>
Tensor<T> linear(Tape<T>& tape, const Tensor<T>& x, const Tensor<T>& w);

// y = x + b with b: [q] broadcast over rows.
template <typename T>
Tensor<T> bias_add(Tape<T>& tape, const Tensor<T>& x, const Tensor<T>& b);

template <typename T>
Tensor<T> add(Tape<T>& tape, const Tensor<T>& x, const Tensor<T>& y);

template <typename T>
Tensor<T> sub(Tape<T>& tape, const Tensor<T>& x, const Tensor<T>& y);

template <typename T>
Tensor<T> mul(Tape<T>& tape, const Tensor<T>& x, const Tensor<T>& y);

template <typename T>
Tensor<T> scalar_mul(Tape<T>& tape, const Tensor<T>& x, T c);

template <typename T>
Tensor<T> relu(Tape<T>& tape, const Tensor<T>& x);

template <typename T>
Tensor<T> sigmoid(Tape<T>& tape, const Tensor<T>& x);

// Concatenate along the last axis.  All inputs share leading shape.
template <typename T>
Tensor<T> concat_last(Tape<T>& tape, const std::vector<Tensor<T>>& parts);

// Inverse of concat_last.
template <typename T>
std::vector<Tensor<T>> split_last(Tape<T>& tape, const Tensor<T>& x,
                                  const std::vector<int>& sizes);

// Append the per-batch vector v: [B,k] to every object of x: [B,m,d],
// giving [B,m,d+k].  Used for action conditioning of set networks.
template <typename T>
Tensor<T> concat_broadcast(Tape<T>& tape, const Tensor<T>& x,
                           const Tensor<T>& v);

// Same element order, new shape (sizes must match).
template <typename T>
Tensor<T> reshape(Tape<T>& tape, const Tensor<T>& x, Shape shape);

// Pick row idx[b] from the middle axis: x: [B,A,K], idx: size B -> [B,K].
template <typename T>
Tensor<T> select_middle(Tape<T>& tape, const Tensor<T>& x,
                        const std::vector<int>& idx);

// Layer normalization over the last axis with trainable gain/bias: [d].
// Variance uses the biased estimator plus eps ( = 1e-5) inside the sqrt.
template <typename T>
Tensor<T> layer_norm(Tape<T>& tape, const Tensor<T>& x, const Tensor<T>& gain,
                     const Tensor<T>& bias, T eps = T(1e-5));

// Mean over the object axis: [B,m,d] -> [B,d].  Order-invariant.
template <typename T>
Tensor<T> mean_pool(Tape<T>& tape, const Tensor<T>& x);

// Softmax over the last axis.  Order-invariant denominator.
template <typename T>
Tensor<T> softmax_last(Tape<T>& tape, const Tensor<T>& x);

// Row gather: table: [V,d], idx: size N -> [N,d].  Backward scatter-adds.
template <typename T>
Tensor<T> embed_rows(Tape<T>& tape, const Tensor<T>& table,
                     const std::vector<int>& idx);

// Scaled-dot-product multi-head attention on pre-projected inputs.
//   q: [B,n,D], k,v: [B,m,D], D divisible by heads.
// Heads are contiguous D/heads-wide blocks of the feature axis.  If
// topk > 0 and topk < m, each (head, query) row keeps only its topk largest
// attention weights (ties resolved toward the lowest key index) and
// renormalizes them; gradients flow only through the kept entries.
// `weights`, filled when want_weights, holds the final (possibly sparse)
// attention matrix [B, heads, n, m] and is detached from the tape.
template <typename T>
struct AttentionResult {
  Tensor<T> out;
  Tensor<T> weights;
};
template <typename T>
AttentionResult<T> multihead_attention(Tape<T>& tape, const Tensor<T>& q,
                                       const Tensor<T>& k, const Tensor<T>& v,
                                       int heads, int topk = 0,
                                       bool want_weights = false);

// Mean over N of -log softmax(logits)[target]: logits [N,K].
template <typename T>
Tensor<T> softmax_cross_entropy(Tape<T>& tape, const Tensor<T>& logits,
                                const std::vector<int>& targets);

// Mean over N of KL(target_probs || softmax(logits)): logits [N,K].
// Optional per-sample importance weights scale each sample's contribution
// to the mean; optional per_sample output receives the unweighted KL of
// each row (used for replay priorities).
template <typename T>
Tensor<T> kl_from_logits(Tape<T>& tape, const Tensor<T>& logits,
                         const std::vector<T>& target_probs,
                         const std::vector<T>* sample_weights = nullptr,
                         std::vector<T>* per_sample = nullptr);

// Mean over N of binary cross-entropy between sigmoid(logits) and targets.
template <typename T>
Tensor<T> bce_with_logits(Tape<T>& tape, const Tensor<T>& logits,
                          const std::vector<T>& targets);

// Mean squared difference over all elements; target carries no gradient.
template <typename T>
Tensor<T> mse(Tape<T>& tape, const Tensor<T>& pred,
              const std::vector<T>& target);

// Mean squared difference between two differentiable tensors.
template <typename T>
Tensor<T> mse(Tape<T>& tape, const Tensor<T>& pred, const Tensor<T>& target);

// Mean of all elements -> scalar.
template <typename T>
Tensor<T> mean_all(Tape<T>& tape, const Tensor<T>& x);

}  // namespace setplan::ad
