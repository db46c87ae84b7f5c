#pragma once
// Observation encoders.
//
// SetEncoder turns an S x S grid of 3-integer cell codes into a set of
// S*S objects of length 32: a 24-length feature (the three per-cell
// embeddings mean-pooled, then layer-normed) concatenated with an 8-length
// trainable positional tail.  The tail table is initialized with the four
// corner-relative (x, y) coordinate pairs of each cell, so tails are
// pairwise distinct and differences between tails are translation
// invariant.  An optional per-sample "noisy shift" adds one global integer
// offset (dx, dy) to every x slot and every y slot of every tail of that
// sample, which regularizes downstream networks toward using relative
// positions.
//
// NosetEncoder shares the cell-embedding construction but flattens the
// feature map in cell order and projects it to a single 256-length vector
// (layer-normed); positions are implicit in the flattening order.

#include <array>
#include <vector>

#include "setplan/grid.hpp"
#include "setplan/nets.hpp"
#include "setplan/rng.hpp"

namespace setplan::enc {

using ad::Tape;
using ad::Tensor;
using nets::ParameterStore;

// tail slots holding x coordinates vs y coordinates
inline constexpr int kTailXSlots[4] = {0, 2, 4, 6};
inline constexpr int kTailYSlots[4] = {1, 3, 5, 7};

template <typename T>
std::array<T, nets::kTailDim> tail_init(int x, int y, int size);

// Per-channel cell embeddings ("bag of words"): each of the three integers
// indexes its own trainable table, the three embedded vectors (each linear
// with bias) are mean-pooled into the 24-length cell feature.
template <typename T>
struct BowTables {
  Tensor<T> object, color, state;        // [ids, 24]
  Tensor<T> object_b, color_b, state_b;  // [24]

  // [B, S*S, 24] features for a batch of observations (no normalization)
  Tensor<T> features(Tape<T>& tape,
                     const std::vector<const env::Observation*>& obs) const;
};

template <typename T>
BowTables<T> make_bow_tables(ParameterStore<T>& store,
                             const std::string& prefix, rng::Stream& init);

template <typename T>
struct SetEncoder {
  BowTables<T> bow;
  nets::LayerNorm<T> ln;  // over the 24-length feature, before tail append
  Tensor<T> tails;        // [S*S, 8]
  int size = 0;

  // One (dx, dy) pair per observation; pass an empty vector for no shift.
  // Observations that form one transition must share their pair.
  Tensor<T> encode(Tape<T>& tape,
                   const std::vector<const env::Observation*>& obs,
                   const std::vector<std::array<int, 2>>& shifts) const;
  Tensor<T> encode_one(Tape<T>& tape, const env::Observation& o) const;
};

template <typename T>
SetEncoder<T> make_set_encoder(ParameterStore<T>& store,
                               const std::string& prefix, int size,
                               rng::Stream& init);

template <typename T>
struct NosetEncoder {
  BowTables<T> bow;
  nets::Dense<T> project;  // [S*S*24 -> 256]
  nets::LayerNorm<T> ln;
  int size = 0;

  Tensor<T> encode(Tape<T>& tape,
                   const std::vector<const env::Observation*>& obs) const;
};

template <typename T>
NosetEncoder<T> make_noset_encoder(ParameterStore<T>& store,
                                   const std::string& prefix, int size,
                                   rng::Stream& init);

// Pair objects of two encoded sets by exact tail equality: result[i] is the
// index in `target` whose tail matches object i of `predicted` bit for bit.
// Throws unless the pairing is a bijection.
template <typename T>
std::vector<int> align_by_tail(const Tensor<T>& predicted,
                               const Tensor<T>& target);

// Draw one tail shift with both offsets uniform over [-size, size].
template <typename T = float>
std::array<int, 2> sample_shift(rng::Stream& stream, int size) {
  return {int(stream.uniform_int(std::uint64_t(2 * size + 1))) - size,
          int(stream.uniform_int(std::uint64_t(2 * size + 1))) - size};
}

}  // namespace setplan::enc
