#pragma once
// Agent assembly: one encoder, one value estimator, and (for the
// model-based kinds) one transition model, built over a single parameter
// store with stable names so staged training can address "enc.", "model."
// and "value." groups and a target copy can mirror the layout exactly.
//
// Kinds:
//   cp         set latent; bottleneck transition model: compress (semi-hard
//              attention onto n learned queries), bottleneck dynamics,
//              reward/termination from (c, c'), decompress back to the full
//              set for planning
//   up         set latent; full-set action-conditioned dynamics;
//              reward/termination from (s, s')
//   modelfree  set latent; value estimator only
//   noset      flat 256-vector latent; dense value/dynamics/reward nets

#include <optional>
#include <string>
#include <vector>

#include "setplan/distrib.hpp"
#include "setplan/encoder.hpp"
#include "setplan/nets.hpp"

namespace setplan::agent {

using ad::Tape;
using ad::Tensor;

enum class AgentKind { kCP, kUP, kModelFree, kNoset };

AgentKind kind_from_name(const std::string& name);
std::string kind_name(AgentKind k);

struct AgentConfig {
  AgentKind kind = AgentKind::kCP;
  int grid_size = 6;
  int num_actions = 3;
  int bottleneck = 8;          // CP: bottleneck set size n
  int topk = 2;                // CP: semi-hard weights kept per query/head
  bool soft_attention = false; // CP ablation: keep the full soft weights
  bool inverse_action = true;  // CP: train the inverse-action head
  bool noisy_shift = true;     // set encoder: tail-shift regularizer
  bool decompress_residual = false;
  bool noise_augment = false;  // CP+: noise appended to bottleneck objects

  int objects() const { return grid_size * grid_size; }
};

template <typename T>
struct ModelOut {
  Tensor<T> next;           // predicted next latent (set or vector)
  Tensor<T> reward_logits;  // [B, 2]
  Tensor<T> term_logit;     // [B, 1]
  Tensor<T> c, c_next;      // CP bottleneck sets (null otherwise)
  Tensor<T> weights;        // CP compressor weights [B, h, n, m] if asked
};

template <typename T>
struct Agent {
  AgentConfig cfg;
  ad::ParameterStore<T> params;

  // set-based members
  enc::SetEncoder<T> encoder;
  nets::SetValueEstimator<T> value;
  nets::ActionConditionedLayer<T> dyn_layer;  // UP
  nets::DynamicsOutput<T> dyn_out;            // UP
  nets::Compressor<T> compressor;             // CP
  nets::ActionConditionedLayer<T> cdyn_layer; // CP
  nets::DynamicsOutput<T> cdyn_out;           // CP
  nets::Decompressor<T> decompressor;         // CP
  nets::InverseActionHead<T> inverse;         // CP
  nets::RewardTermEstimator<T> rt;            // CP + UP

  // vector-based members
  enc::NosetEncoder<T> noset_enc;
  nets::NosetNets<T> noset;

  bool set_based() const { return cfg.kind != AgentKind::kNoset; }
  bool has_model() const { return cfg.kind != AgentKind::kModelFree; }

  // Encode a batch of observations; one tail shift per sample or empty.
  Tensor<T> encode(Tape<T>& tape,
                   const std::vector<const env::Observation*>& obs,
                   const std::vector<std::array<int, 2>>& shifts) const;

  // [B, A, atoms] categorical value logits
  Tensor<T> value_logits(Tape<T>& tape, const Tensor<T>& state) const;

  // Expected Q per action, flattened [B * A], computed off-tape.
  std::vector<double> q_expected(const Tensor<T>& state) const;

  // One imagined transition for every sample under its given action.
  ModelOut<T> model_step(Tape<T>& tape, const Tensor<T>& state,
                         const std::vector<int>& actions,
                         bool want_weights = false,
                         rng::Stream* noise = nullptr) const;

  Tensor<T> inverse_logits(Tape<T>& tape, const Tensor<T>& c,
                           const Tensor<T>& c_next) const;
};

template <typename T>
Agent<T> make_agent(const AgentConfig& cfg, std::uint64_t weight_seed);

// Number of environment actions for a variant lives in env::num_actions.

}  // namespace setplan::agent
