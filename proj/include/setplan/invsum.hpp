#pragma once
// Order-invariant floating-point accumulation.
//
// Reductions across the object axis (attention weighted sums, softmax
// denominators, mean pooling) must give bit-identical results under any
// permutation of the objects.  Plain float addition is not associative, so
// instead each addend is rounded once to a fixed-point grid and accumulated
// in an integer, where addition *is* associative.  The quantization step is
// far below float precision at the magnitudes that occur in practice, and
// identical for every operand order.
//
// float path:  addend -> double -> round(x * 2^31) -> int64 accumulator.
//              Rounding uses the 1.5*2^52 magic-constant trick (valid while
//              |x|*2^31 < 2^51, i.e. |x| < 2^20) because it compiles to
//              mul+add+sub and auto-vectorizes; lrint does not on this ISA.
// double path: round(x * 2^50) -> int64 addend -> __int128 accumulator.
//              Only used by the float64 instantiation (gradient checking),
//              so speed is irrelevant there.

#include <bit>
#include <cmath>
#include <cstdint>
#include <type_traits>

namespace setplan::ad {

inline constexpr double kQScaleF32 = 2147483648.0;              // 2^31
inline constexpr double kQInvScaleF32 = 1.0 / kQScaleF32;
inline constexpr double kQMagic = 6755399441055744.0;           // 1.5 * 2^52

// round-to-nearest-even of x, as an integer, for |x| < 2^51.
inline std::int64_t round_magic(double x) {
  const double y = x + kQMagic;
  return std::bit_cast<std::int64_t>(y) -
         std::bit_cast<std::int64_t>(kQMagic);
}

template <typename T>
struct InvSum;

template <>
struct InvSum<float> {
  using acc_t = std::int64_t;
  static acc_t quantize(float x) { return round_magic(double(x) * kQScaleF32); }
  // fused product quantization: the product is formed in double, so the only
  // rounding is the final grid snap (independent of accumulation order).
  static acc_t quantize_prod(float a, float b) {
    return round_magic(double(a) * double(b) * kQScaleF32);
  }
  static float dequantize(acc_t a) { return float(double(a) * kQInvScaleF32); }
};

template <>
struct InvSum<double> {
  using acc_t = __int128;
  static constexpr double kScale = 1125899906842624.0;  // 2^50
  static acc_t quantize(double x) { return std::llrint(x * kScale); }
  static acc_t quantize_prod(double a, double b) {
    return std::llrint(a * b * kScale);
  }
  static double dequantize(acc_t a) { return double(a) * (1.0 / kScale); }
};

}  // namespace setplan::ad
