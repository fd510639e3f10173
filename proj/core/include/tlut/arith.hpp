// SPDX-License-Identifier: Apache-2.0
//
// Arithmetic policies used by the DAG evaluator and the LUT simulator.
//
//   Input  activation word as ingested
//   Entry  LUT entry word (build-phase adder output)
//   Acc    accumulator word
#pragma once

#include <cstdint>

#include "tlut/fp16.hpp"

namespace tlut {

/// INT8 activations, 16-bit LUT entries (|entry| <= 8 * 128), 32-bit accumulators.
struct Int8Arith {
  using Input = std::int8_t;
  using Entry = std::int16_t;
  using Acc = std::int32_t;

  static constexpr Entry widen(Input x) noexcept { return x; }
  static constexpr Entry add(Entry a, Entry b) noexcept { return static_cast<Entry>(a + b); }
  static constexpr Entry sub(Entry a, Entry b) noexcept { return static_cast<Entry>(a - b); }
  static constexpr Entry negate(Entry a) noexcept { return static_cast<Entry>(-a); }
  static constexpr Entry zero_entry() noexcept { return 0; }
  static constexpr Acc zero_acc() noexcept { return 0; }
  static constexpr Acc to_acc(Entry e) noexcept { return e; }
  static constexpr Acc accumulate(Acc a, Entry e) noexcept { return a + e; }
  static constexpr Acc accumulate(Acc a, Acc b) noexcept { return a + b; }
};

/// binary16 throughout; every operation rounds to binary16.
struct Fp16Arith {
  using Input = fp16::Half;
  using Entry = fp16::Half;
  using Acc = fp16::Half;

  static constexpr Entry widen(Input x) noexcept { return x; }
  static Entry add(Entry a, Entry b) noexcept { return fp16::add(a, b); }
  static Entry sub(Entry a, Entry b) noexcept { return fp16::sub(a, b); }
  static constexpr Entry negate(Entry a) noexcept { return fp16::negate(a); }
  static constexpr Entry zero_entry() noexcept { return fp16::kPositiveZero; }
  static constexpr Acc zero_acc() noexcept { return fp16::kPositiveZero; }
  static constexpr Acc to_acc(Entry e) noexcept { return e; }
  static Acc accumulate(Acc a, Entry b) noexcept { return fp16::add(a, b); }
};

/// Wide integers, used for DAG verification with arbitrary activations.
struct Int64Arith {
  using Input = std::int64_t;
  using Entry = std::int64_t;
  using Acc = std::int64_t;

  static constexpr Entry widen(Input x) noexcept { return x; }
  static constexpr Entry add(Entry a, Entry b) noexcept { return a + b; }
  static constexpr Entry sub(Entry a, Entry b) noexcept { return a - b; }
  static constexpr Entry negate(Entry a) noexcept { return -a; }
  static constexpr Entry zero_entry() noexcept { return 0; }
  static constexpr Acc zero_acc() noexcept { return 0; }
  static constexpr Acc to_acc(Entry e) noexcept { return e; }
  static constexpr Acc accumulate(Acc a, Entry b) noexcept { return a + b; }
};

}  // namespace tlut
