#pragma once
// Deterministic random number generation.
//
// Every stochastic component draws from its own named stream so that, e.g.,
// changing the exploration policy cannot perturb world generation for the
// same master seed.  Streams are xoshiro256** instances seeded through
// splitmix64(master_seed ^ fnv1a(stream_name)).  Sampling helpers are
// hand-rolled rather than delegated to <random> distributions because the
// standard leaves distribution output unspecified across implementations.

#include <array>
#include <cstdint>
#include <cmath>
#include <string>
#include <string_view>

namespace setplan::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// xoshiro256** 1.0 (Blackman & Vigna), public-domain reference algorithm.
class Stream {
 public:
  Stream() : Stream(0, "default") {}
  Stream(std::uint64_t master_seed, std::string_view name) {
    std::uint64_t sm = master_seed ^ fnv1a(name);
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n) by rejection from the top of the range
  // (unbiased for any n).
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // Integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + std::int64_t(uniform_int(std::uint64_t(hi - lo + 1)));
  }

  // Standard normal via Box-Muller; caches the second variate.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Serializable state: 4 generator words + Box-Muller cache.
  struct State {
    std::array<std::uint64_t, 4> s;
    bool have_cached;
    double cached;
  };
  State state() const { return {s_, have_cached_, cached_}; }
  void set_state(const State& st) {
    s_ = st.s;
    have_cached_ = st.have_cached;
    cached_ = st.cached;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// The four stream names used across the project.  Kept here so call sites
// cannot drift apart on spelling.
inline constexpr std::string_view kEnvStream = "env";
inline constexpr std::string_view kWeightsStream = "weights";
inline constexpr std::string_view kExplorationStream = "exploration";
inline constexpr std::string_view kEvaluationStream = "evaluation";

}  // namespace setplan::rng
