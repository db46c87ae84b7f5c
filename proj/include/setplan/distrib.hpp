#pragma once
// Categorical ("distributional") output utilities.
//
// Value heads emit logits over 4 atoms spanning [0, 1]; reward heads over 2
// atoms {0, 1}.  Scalar training targets are projected onto the support by
// splitting their mass between the two neighboring atoms, which preserves
// the mean for any in-support scalar.

#include <array>
#include <cmath>
#include <vector>

namespace setplan::dist {

inline constexpr int kValueAtoms = 4;
inline constexpr int kRewardAtoms = 2;

inline const std::array<double, kValueAtoms>& value_support() {
  static const std::array<double, kValueAtoms> s = {0.0, 1.0 / 3.0, 2.0 / 3.0,
                                                    1.0};
  return s;
}

inline const std::array<double, kRewardAtoms>& reward_support() {
  static const std::array<double, kRewardAtoms> s = {0.0, 1.0};
  return s;
}

// Project a scalar onto a sorted, uniformly spaced support: clamp to the
// ends, then split probability mass between the bracketing atoms in
// proportion to proximity.
template <std::size_t K>
std::array<double, K> project_scalar(double g,
                                     const std::array<double, K>& support) {
  static_assert(K >= 2);
  std::array<double, K> p{};
  const double lo = support.front(), hi = support.back();
  if (g <= lo) {
    p.front() = 1.0;
    return p;
  }
  if (g >= hi) {
    p.back() = 1.0;
    return p;
  }
  const double delta = (hi - lo) / double(K - 1);
  const double b = (g - lo) / delta;
  const auto j = std::size_t(b);
  const double upper = b - double(j);
  p[j] = 1.0 - upper;
  p[j + 1] = upper;
  return p;
}

template <typename T, std::size_t K>
double expectation(const T* probs, const std::array<double, K>& support) {
  double e = 0;
  for (std::size_t k = 0; k < K; ++k) e += double(probs[k]) * support[k];
  return e;
}

// Numerically stable softmax over a small logit block (no tape involvement).
template <typename T>
void probs_from_logits(const T* logits, int k, double* out) {
  double mx = double(logits[0]);
  for (int i = 1; i < k; ++i) mx = std::max(mx, double(logits[i]));
  double z = 0;
  for (int i = 0; i < k; ++i) {
    out[i] = std::exp(double(logits[i]) - mx);
    z += out[i];
  }
  for (int i = 0; i < k; ++i) out[i] /= z;
}

// Expected value per action from a [B, A, K] logit block.
template <typename T, std::size_t K>
std::vector<double> expected_values(const std::vector<T>& logits, int b, int a,
                                    const std::array<double, K>& support) {
  std::vector<double> q(std::size_t(b) * std::size_t(a));
  std::array<double, K> probs;
  for (int i = 0; i < b * a; ++i) {
    probs_from_logits(logits.data() + std::size_t(i) * K, int(K),
                      probs.data());
    q[std::size_t(i)] = expectation(probs.data(), support);
  }
  return q;
}

}  // namespace setplan::dist
