#pragma once
// Network building blocks for the set-based agents.
//
// Objects are 32-wide: a 24-wide learned feature part plus an 8-wide
// positional tail (four corner-relative coordinate pairs).  Attention
// blocks follow the post-norm arrangement: x -> LN(x + attn) -> LN(. + FF),
// with 8 heads and 2-layer feed-forward sublayers of hidden width 64
// throughout.  Dynamics blocks are action-conditioned by appending the
// action embedding (a fixed one-hot of width 8) to each object before the
// feed-forward sublayer.  Dynamics outputs are downscaled to the feature
// width, layer-normalized, and have their positional tails reattached from
// the current state, so predicted next states live in the same space as
// encoded ones.

#include <string>
#include <vector>

#include "setplan/adam.hpp"
#include "setplan/ops.hpp"
#include "setplan/rng.hpp"

namespace setplan::nets {

inline constexpr int kFeatureDim = 24;
inline constexpr int kTailDim = 8;
inline constexpr int kObjectDim = kFeatureDim + kTailDim;  // 32
inline constexpr int kActionDim = 8;   // one-hot action embedding width
inline constexpr int kHeads = 8;
inline constexpr int kFFHidden = 64;
inline constexpr int kValueAtoms = 4;  // support {0, 1/3, 2/3, 1}
inline constexpr int kRewardAtoms = 2; // support {0, 1}

using ad::ParameterStore;
using ad::Tape;
using ad::Tensor;

// Fixed one-hot action embedding rows for a batch of actions.
template <typename T>
Tensor<T> action_onehot(const std::vector<int>& actions);

template <typename T>
struct Dense {
  Tensor<T> w, b;
  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& x) const {
    return ad::bias_add(tape, ad::linear(tape, x, w), b);
  }
};

template <typename T>
Dense<T> make_dense(ParameterStore<T>& store, const std::string& name, int in,
                    int out, rng::Stream& init);

template <typename T>
struct LayerNorm {
  Tensor<T> gain, bias;
  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& x) const {
    return ad::layer_norm(tape, x, gain, bias);
  }
};

template <typename T>
LayerNorm<T> make_layer_norm(ParameterStore<T>& store, const std::string& name,
                             int dim);

// d -> hidden -> d with ReLU; `in` may exceed d for action-conditioned use.
template <typename T>
struct FeedForward {
  Dense<T> a, b;
  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& x) const {
    return b.forward(tape, ad::relu(tape, a.forward(tape, x)));
  }
};

template <typename T>
FeedForward<T> make_feed_forward(ParameterStore<T>& store,
                                 const std::string& name, int in, int hidden,
                                 int out, rng::Stream& init);

// Post-norm self-attention transformer layer on a set [B,m,d].
template <typename T>
struct TransformerLayer {
  Dense<T> wq, wk, wv, wo;
  LayerNorm<T> ln1, ln2;
  FeedForward<T> ff;
  int heads = kHeads;

  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& x) const;
};

template <typename T>
TransformerLayer<T> make_transformer_layer(ParameterStore<T>& store,
                                           const std::string& name, int d,
                                           rng::Stream& init);

// Self-attention layer whose feed-forward sublayer sees the action:
// h = LN(x + Wo attn(x)); out = LN(h + FF(cat[h, a])).
template <typename T>
struct ActionConditionedLayer {
  Dense<T> wq, wk, wv, wo;
  LayerNorm<T> ln1, ln2;
  FeedForward<T> ff;  // (d + kActionDim) -> hidden -> d
  int heads = kHeads;

  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& x,
                    const Tensor<T>& a_emb) const;
};

template <typename T>
ActionConditionedLayer<T> make_action_layer(ParameterStore<T>& store,
                                            const std::string& name, int d,
                                            rng::Stream& init);

// Distributional action-value estimator on object sets: three transformer
// layers, mean pooling, and a two-layer head producing one categorical
// distribution per action over kValueAtoms support points on [0,1].
template <typename T>
struct SetValueEstimator {
  std::vector<TransformerLayer<T>> layers;
  Dense<T> head_a, head_b;
  int num_actions = 0;

  // logits [B, num_actions, kValueAtoms]
  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& s) const;
};

template <typename T>
SetValueEstimator<T> make_value_estimator(ParameterStore<T>& store,
                                          const std::string& prefix,
                                          int num_actions, rng::Stream& init);

// Learned-seed cross-attention compressor.  Each of the n seeds forms a
// query via a linear map of [seed, action]; queries attend to the state set
// with semi-hard (top-k per head) attention, so every compressed object is
// grounded in at most k source objects per head.
template <typename T>
struct Compressor {
  Tensor<T> seeds;  // [n, kObjectDim]
  Dense<T> query;   // kObjectDim + kActionDim -> kObjectDim
  Dense<T> wk, wv, wo;
  LayerNorm<T> ln1, ln2;
  FeedForward<T> ff;
  int heads = kHeads;
  int topk = 2;

  struct Out {
    Tensor<T> c;        // [B, n, kObjectDim]
    Tensor<T> weights;  // [B, heads, n, m] when requested, else null
  };
  Out forward(Tape<T>& tape, const Tensor<T>& s, const Tensor<T>& a_emb,
              bool want_weights = false) const;
};

template <typename T>
Compressor<T> make_compressor(ParameterStore<T>& store,
                              const std::string& prefix, int n_seeds, int topk,
                              rng::Stream& init);

// Reconstructs the full predicted next set: each current object (with the
// action appended) queries the predicted compressed next state with soft
// attention; the result is downscaled to the feature width, normalized, and
// the querying object's positional tail is reattached.
template <typename T>
struct Decompressor {
  Dense<T> query;  // kObjectDim + kActionDim -> kObjectDim
  Dense<T> wk, wv, wo;
  LayerNorm<T> ln1, ln2;
  FeedForward<T> ff;
  Dense<T> down;  // kObjectDim -> kFeatureDim
  LayerNorm<T> out_ln;
  int heads = kHeads;
  // optional residual from the current features into the predicted ones
  // (normed sum); default is to use the attention output alone
  bool residual = false;

  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& s,
                    const Tensor<T>& c_next, const Tensor<T>& a_emb) const;
};

template <typename T>
Decompressor<T> make_decompressor(ParameterStore<T>& store,
                                  const std::string& prefix,
                                  rng::Stream& init);

// Full-set dynamics output head shared by both dynamics styles: downscale
// to features, normalize, reattach tails from the current state.
template <typename T>
struct DynamicsOutput {
  Dense<T> down;
  LayerNorm<T> out_ln;
  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& h,
                    const Tensor<T>& s_current) const;
};

template <typename T>
DynamicsOutput<T> make_dynamics_output(ParameterStore<T>& store,
                                       const std::string& prefix,
                                       rng::Stream& init,
                                       int in_width = kObjectDim);

// Predicts the reward distribution (kRewardAtoms over {0,1}) and the
// termination probability of a transition from [state, next, action]
// objects: one transformer layer at the concatenated width, mean pooling,
// and two-layer heads.
template <typename T>
struct RewardTermEstimator {
  TransformerLayer<T> layer;  // width 2*kObjectDim + kActionDim = 72
  Dense<T> reward_a, reward_b;
  Dense<T> term_a, term_b;

  struct Out {
    Tensor<T> reward_logits;  // [B, kRewardAtoms]
    Tensor<T> term_logit;     // [B, 1]
  };
  Out forward(Tape<T>& tape, const Tensor<T>& cur, const Tensor<T>& next,
              const Tensor<T>& a_emb) const;
};

template <typename T>
RewardTermEstimator<T> make_rt_estimator(ParameterStore<T>& store,
                                         const std::string& prefix,
                                         rng::Stream& init);

// Predicts which action produced a compressed transition (c_t, c_hat_t+1);
// trained with cross-entropy, it keeps action-relevant information in the
// bottleneck.
template <typename T>
struct InverseActionHead {
  Dense<T> a, b;  // pooled 2*kObjectDim -> 64 -> num_actions
  Tensor<T> forward(Tape<T>& tape, const Tensor<T>& c,
                    const Tensor<T>& c_next) const;
};

template <typename T>
InverseActionHead<T> make_inverse_head(ParameterStore<T>& store,
                                       const std::string& prefix,
                                       int num_actions, rng::Stream& init);

// --------------------------------------------------------------------------
// Unstructured baseline: the observation is flattened to one vector, so
// nothing is shared between positions and permutation structure is absent.
// --------------------------------------------------------------------------

inline constexpr int kNosetEmbed = 256;
inline constexpr int kNosetHidden = 512;

template <typename T>
struct NosetNets {
  Dense<T> value1, value2, value3;   // 256 -> 512 -> 512 -> A*atoms
  Dense<T> dyn1, dyn2;               // cat(z,a) 264 -> 512 -> 256 residual
  LayerNorm<T> dyn_ln;
  Dense<T> rt1, rt2, reward_out, term_out;  // cat(z,z',a) 520 -> 512 -> 512
  int num_actions = 0;

  Tensor<T> value_logits(Tape<T>& tape, const Tensor<T>& z) const;
  Tensor<T> dynamics(Tape<T>& tape, const Tensor<T>& z,
                     const Tensor<T>& a_emb) const;
  typename RewardTermEstimator<T>::Out reward_term(
      Tape<T>& tape, const Tensor<T>& z, const Tensor<T>& z_next,
      const Tensor<T>& a_emb) const;
};

template <typename T>
NosetNets<T> make_noset_nets(ParameterStore<T>& store, int num_actions,
                             rng::Stream& init);

}  // namespace setplan::nets
