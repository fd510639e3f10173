// SPDX-License-Identifier: Apache-2.0
//
// IEEE 754 binary16 emulation.
//
// Additions are carried out in binary32 and the result is rounded to binary16
// with round-to-nearest-even. binary32 carries 24 significand bits, which is
// >= 2 * 11 + 2, so rounding twice (once to binary32, once to binary16) gives
// the same result as a single correctly rounded binary16 addition.
#pragma once

#include <cstdint>

namespace tlut::fp16 {

struct Half {
  std::uint16_t bits = 0;

  static constexpr Half from_bits(std::uint16_t b) noexcept { return Half{b}; }
  friend constexpr bool operator==(Half, Half) = default;
};

inline constexpr Half kPositiveZero{0x0000};
inline constexpr Half kNegativeZero{0x8000};
inline constexpr Half kPositiveInfinity{0x7C00};
inline constexpr Half kCanonicalNaN{0x7E00};
inline constexpr Half kMaxFinite{0x7BFF};  // 65504

constexpr bool is_nan(Half h) noexcept {
  return (h.bits & 0x7C00) == 0x7C00 && (h.bits & 0x03FF) != 0;
}
constexpr bool is_inf(Half h) noexcept { return (h.bits & 0x7FFF) == 0x7C00; }
constexpr bool is_finite(Half h) noexcept { return (h.bits & 0x7C00) != 0x7C00; }
constexpr bool sign_bit(Half h) noexcept { return (h.bits & 0x8000) != 0; }

/// Flips only the sign bit.
constexpr Half negate(Half h) noexcept {
  return Half{static_cast<std::uint16_t>(h.bits ^ 0x8000)};
}

/// Exact widening conversions.
double to_double(Half h) noexcept;
float to_float(Half h) noexcept;

/// Correctly rounded (nearest-even) narrowing. Overflow gives infinity,
/// NaN gives the canonical quiet NaN.
Half from_double(double value) noexcept;
Half from_float(float value) noexcept;

Half add(Half a, Half b) noexcept;
inline Half sub(Half a, Half b) noexcept { return add(a, negate(b)); }

}  // namespace tlut::fp16
