// SPDX-License-Identifier: Apache-2.0
#include "tlut/fp16.hpp"

#include <cmath>

namespace tlut::fp16 {

namespace {

constexpr int kMantissaBits = 10;
constexpr int kMinNormalExp = -14;
constexpr int kMaxExp = 15;

// Round a non-negative value that is an exact multiple of 2^-k (k <= 1074)
// to an integer, ties to even.
double round_half_even(double q) noexcept {
  const double f = std::floor(q);
  const double frac = q - f;
  if (frac > 0.5) return f + 1.0;
  if (frac < 0.5) return f;
  return std::fmod(f, 2.0) == 0.0 ? f : f + 1.0;
}

}  // namespace

double to_double(Half h) noexcept {
  const bool negative = sign_bit(h);
  const int exp_field = (h.bits >> kMantissaBits) & 0x1F;
  const int mantissa = h.bits & 0x3FF;
  double magnitude;
  if (exp_field == 0x1F) {
    magnitude = mantissa == 0 ? HUGE_VAL : std::nan("");
  } else if (exp_field == 0) {
    magnitude = std::ldexp(static_cast<double>(mantissa), kMinNormalExp - kMantissaBits);
  } else {
    magnitude = std::ldexp(static_cast<double>(mantissa | 0x400), exp_field - 15 - kMantissaBits);
  }
  return negative ? -magnitude : magnitude;
}

float to_float(Half h) noexcept { return static_cast<float>(to_double(h)); }

Half from_double(double value) noexcept {
  if (std::isnan(value)) return kCanonicalNaN;
  const std::uint16_t sign = std::signbit(value) ? 0x8000 : 0x0000;
  const double a = std::fabs(value);
  if (a == 0.0) return Half{sign};
  if (std::isinf(a)) return Half{static_cast<std::uint16_t>(sign | 0x7C00)};

  int e2 = 0;
  std::frexp(a, &e2);  // a = f * 2^e2, f in [0.5, 1)
  int exponent = e2 - 1;
  if (exponent > kMaxExp) return Half{static_cast<std::uint16_t>(sign | 0x7C00)};
  if (exponent < kMinNormalExp) exponent = kMinNormalExp;

  // Scale so one unit is one ulp at this binade; both operations are exact.
  const int ulp_exp = exponent - kMantissaBits;
  const double rounded = std::ldexp(round_half_even(std::ldexp(a, -ulp_exp)), ulp_exp);
  if (rounded >= 65536.0) return Half{static_cast<std::uint16_t>(sign | 0x7C00)};
  if (rounded == 0.0) return Half{sign};

  std::frexp(rounded, &e2);
  const int final_exp = e2 - 1;
  if (final_exp < kMinNormalExp) {
    const auto subnormal = static_cast<std::uint16_t>(std::ldexp(rounded, -(kMinNormalExp - kMantissaBits)));
    return Half{static_cast<std::uint16_t>(sign | subnormal)};
  }
  const auto significand = static_cast<std::uint16_t>(std::ldexp(rounded, kMantissaBits - final_exp));
  const auto exp_field = static_cast<std::uint16_t>(final_exp + 15);
  return Half{static_cast<std::uint16_t>(sign | (exp_field << kMantissaBits) | (significand & 0x3FF))};
}

Half from_float(float value) noexcept { return from_double(static_cast<double>(value)); }

Half add(Half a, Half b) noexcept {
  const float sum = to_float(a) + to_float(b);
  return from_float(sum);
}

}  // namespace tlut::fp16
