// SPDX-License-Identifier: Apache-2.0
#include "tlut/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "tlut/errors.hpp"

namespace tlut {

Trit trit_from_int(int value) {
  if (value < -1 || value > 1) {
    throw InvalidArgument("trit value out of range: " + std::to_string(value));
  }
  return static_cast<Trit>(value);
}

TernaryMatrix::TernaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Trit::Zero) {}

TernaryMatrix::TernaryMatrix(std::size_t rows, std::size_t cols, std::vector<Trit> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("ternary matrix data length " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  for (Trit t : data_) trit_from_int(to_int(t));
}

Trit TernaryMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("ternary matrix index out of range");
  return data_[r * cols_ + c];
}

std::span<const Trit> TernaryMatrix::row(std::size_t r) const {
  if (r >= rows_) throw InvalidArgument("ternary matrix row out of range");
  return std::span<const Trit>(data_).subspan(r * cols_, cols_);
}

std::string_view to_string(ActivationType act) noexcept {
  return act == ActivationType::Int8 ? "int8" : "fp16";
}

ActivationType parse_activation_type(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "int8") return ActivationType::Int8;
  if (lower == "fp16") return ActivationType::Fp16;
  throw InvalidArgument("unknown activation type '" + std::string(text) + "' (expected int8 or fp16)");
}

TileConfig::TileConfig(int lut_count, int group_size, int fetchers_per_lut, ActivationType act,
                       int max_group_size)
    : lut_count_(lut_count), group_size_(group_size), fetchers_(fetchers_per_lut), act_(act) {
  if (lut_count < 1) throw InvalidArgument("L must be >= 1");
  if (fetchers_per_lut < 1) throw InvalidArgument("K must be >= 1");
  if (max_group_size > kMaxGroupSize) throw InvalidArgument("mu_max cannot exceed 8");
  if (group_size < 1 || group_size > max_group_size) {
    throw InvalidArgument("mu must be in [1, " + std::to_string(max_group_size) + "], got " +
                          std::to_string(group_size));
  }
}

TileDims tile_dims(const TileConfig& cfg) noexcept { return TileDims{cfg.n(), cfg.m()}; }

double peak_throughput(const TileConfig& cfg, double f_clk_hz) {
  if (!(f_clk_hz > 0.0)) throw InvalidArgument("clock frequency must be positive");
  return f_clk_hz * static_cast<double>(cfg.n()) * static_cast<double>(cfg.m());
}

ActivationVector ActivationVector::from_int8(std::vector<std::int8_t> values) {
  return ActivationVector(Storage(std::move(values)));
}

ActivationVector ActivationVector::from_fp16(std::vector<fp16::Half> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!fp16::is_finite(values[i])) {
      throw InvalidArgument("fp16 activation " + std::to_string(i) + " is NaN or infinite");
    }
  }
  return ActivationVector(Storage(std::move(values)));
}

ActivationType ActivationVector::activation() const noexcept {
  return values_.index() == 0 ? ActivationType::Int8 : ActivationType::Fp16;
}

std::size_t ActivationVector::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, values_);
}

std::span<const std::int8_t> ActivationVector::int8_values() const {
  if (const auto* v = std::get_if<std::vector<std::int8_t>>(&values_)) return *v;
  throw InvalidArgument("activation vector is not int8");
}

std::span<const fp16::Half> ActivationVector::fp16_values() const {
  if (const auto* v = std::get_if<std::vector<fp16::Half>>(&values_)) return *v;
  throw InvalidArgument("activation vector is not fp16");
}

}  // namespace tlut
