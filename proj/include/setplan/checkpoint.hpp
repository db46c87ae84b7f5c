#pragma once
// Versioned binary checkpoints.
//
// Layout: magic "SPCK", format version, then named sections, each a
// length-prefixed blob.  Parameters are stored as named flat arrays with
// shape headers in registration order; optimizer moments, RNG stream
// states, replay contents, and loop counters get their own sections so a
// resumed run continues bit-exactly.  All integers little-endian; floats
// are raw IEEE bit patterns.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "setplan/adam.hpp"
#include "setplan/replay.hpp"
#include "setplan/rng.hpp"

namespace setplan::ckpt {

inline constexpr std::uint32_t kMagic = 0x4b435053;  // "SPCK"
inline constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(const std::string& path);
  ~Writer();
  void u8(std::uint8_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void str(const std::string& s);
  template <typename T>
  void array(const std::vector<T>& v) {
    u64(v.size());
    raw(v.data(), v.size() * sizeof(T));
  }
  void raw(const void* data, std::size_t bytes);
  bool ok() const;

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::string& path);
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  std::string str();
  template <typename T>
  std::vector<T> array() {
    const auto n = std::size_t(u64());
    std::vector<T> v(n);
    raw(v.data(), v.size() * sizeof(T));
    return v;
  }
  void raw(void* data, std::size_t bytes);
  bool at_end();

 private:
  std::ifstream in_;
};

template <typename T>
void write_params(Writer& w, const ad::ParameterStore<T>& store);
template <typename T>
void read_params(Reader& r, ad::ParameterStore<T>& store);

template <typename T>
void write_adam(Writer& w, const ad::ParameterStore<T>& store);
template <typename T>
void read_adam(Reader& r, ad::ParameterStore<T>& store);

void write_stream(Writer& w, const rng::Stream& s);
void read_stream(Reader& r, rng::Stream& s);

void write_observation(Writer& w, const env::Observation& o);
env::Observation read_observation(Reader& r);

void write_replay(Writer& w, const replay::PrioritizedReplay& buffer);
void read_replay(Reader& r, replay::PrioritizedReplay& buffer);

}  // namespace setplan::ckpt
