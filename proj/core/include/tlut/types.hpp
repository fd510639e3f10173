// SPDX-License-Identifier: Apache-2.0
//
// Domain types shared by every module: trits, ternary matrices, activation
// types, tile configurations and activation vectors.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tlut/fp16.hpp"

namespace tlut {

/// Largest supported LUT group size. (3^8 - 1) / 2 = 3280 table entries.
inline constexpr int kMaxGroupSize = 8;

enum class Trit : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

/// Throws InvalidArgument unless value is -1, 0 or +1.
Trit trit_from_int(int value);

constexpr int to_int(Trit t) noexcept { return static_cast<int>(t); }
constexpr Trit negate(Trit t) noexcept { return static_cast<Trit>(-static_cast<int>(t)); }

/// 3^exponent for 0 <= exponent <= 39.
constexpr std::int64_t pow3(int exponent) noexcept {
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= 3;
  return r;
}

/// Number of stored LUT entries after symmetry reduction: (3^mu - 1) / 2.
constexpr std::int64_t lut_table_size(int group_size) noexcept {
  return (pow3(group_size) - 1) / 2;
}

/// Dense row-major matrix of trits. Immutable after construction.
class TernaryMatrix {
 public:
  TernaryMatrix() = default;
  /// All-zero matrix.
  TernaryMatrix(std::size_t rows, std::size_t cols);
  /// Throws InvalidArgument if data.size() != rows * cols.
  TernaryMatrix(std::size_t rows, std::size_t cols, std::vector<Trit> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Trit at(std::size_t r, std::size_t c) const;
  std::span<const Trit> row(std::size_t r) const;
  std::span<const Trit> data() const noexcept { return data_; }

  friend bool operator==(const TernaryMatrix&, const TernaryMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Trit> data_;
};

enum class ActivationType { Int8, Fp16 };

constexpr int word_bits(ActivationType act) noexcept {
  return act == ActivationType::Int8 ? 8 : 16;
}
std::string_view to_string(ActivationType act) noexcept;
/// Accepts "int8" / "fp16" (case-insensitive).
ActivationType parse_activation_type(std::string_view text);

struct TileDims {
  std::int64_t n = 0;  // activations per tile (L * mu)
  std::int64_t m = 0;  // outputs per tile (K)
  friend bool operator==(const TileDims&, const TileDims&) = default;
};

/// One accelerator instance: L parallel LUTs of group size mu, each read by K
/// fetchers, operating on one activation type.
class TileConfig {
 public:
  /// Throws InvalidArgument unless L >= 1, 1 <= mu <= max_group_size, K >= 1.
  TileConfig(int lut_count, int group_size, int fetchers_per_lut, ActivationType act,
             int max_group_size = kMaxGroupSize);

  int lut_count() const noexcept { return lut_count_; }
  int group_size() const noexcept { return group_size_; }
  int fetchers_per_lut() const noexcept { return fetchers_; }
  ActivationType activation() const noexcept { return act_; }

  std::int64_t n() const noexcept { return std::int64_t{lut_count_} * group_size_; }
  std::int64_t m() const noexcept { return fetchers_; }
  std::int64_t tile_size() const noexcept { return n() * m(); }

  friend bool operator==(const TileConfig&, const TileConfig&) = default;

 private:
  int lut_count_;
  int group_size_;
  int fetchers_;
  ActivationType act_;
};

TileDims tile_dims(const TileConfig& cfg) noexcept;

/// f_clk * n * m multiplications per second. Throws InvalidArgument if f_clk <= 0.
double peak_throughput(const TileConfig& cfg, double f_clk_hz);

/// Activation words of a single type. FP16 NaN and infinities are rejected.
class ActivationVector {
 public:
  static ActivationVector from_int8(std::vector<std::int8_t> values);
  static ActivationVector from_fp16(std::vector<fp16::Half> values);

  ActivationType activation() const noexcept;
  std::size_t size() const noexcept;
  /// Throw InvalidArgument when called for the other type.
  std::span<const std::int8_t> int8_values() const;
  std::span<const fp16::Half> fp16_values() const;

  friend bool operator==(const ActivationVector&, const ActivationVector&) = default;

 private:
  using Storage = std::variant<std::vector<std::int8_t>, std::vector<fp16::Half>>;
  explicit ActivationVector(Storage values) : values_(std::move(values)) {}
  Storage values_;
};

}  // namespace tlut
