// SPDX-License-Identifier: Apache-2.0
//
// Analytical area model. Areas are in normalised units (INT8 adder = 1).
//
//   Build+       fitted: (3.069^mu / 1.938) * n / mu
//                exact:  (n / mu) * ((3^mu - 1) / 2 - mu)
//   Accumulate+  n * m / mu
//   MUX          (n * m / mu) * (3^mu - 1) / 2      (2:1-mux equivalents)
//   OutReg       m
//
//   Area = gamma * [ a_add (Build+ + Accumulate+) + (a_mux + a_inv) MUX + a_reg OutReg ]
//
// The model is stated on the tile shape (n, m, mu). n / mu need not be an
// integer: square-tile studies evaluate every mu at a fixed n, as the formulas
// allow. TileConfig overloads use n = L * mu.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tlut/types.hpp"

namespace tlut::cost {

enum class BuildMode { Fitted, Exact };
std::string_view to_string(BuildMode mode) noexcept;

inline constexpr double kBuildFitBase = 3.069;
inline constexpr double kBuildFitScale = 1.938;

struct CostCoefficients {
  ActivationType act = ActivationType::Int8;
  double a_add = 1.0;
  double a_mux = 1.0;
  double a_inv = 0.0;
  double a_reg = 1.0;
  double a_mul = 1.0;
  double gamma = 1.0;

  /// Throws InvalidArgument unless every coefficient is positive (a_inv >= 0).
  void validate() const;
};

/// INI text with one section per activation type ([int8] / [fp16]) holding
/// a_add, a_mux, a_inv, a_reg, a_mul and gamma. Throws ConfigError.
std::vector<CostCoefficients> parse_coefficients(const std::string& text);
/// The section matching act; throws ConfigError when absent.
CostCoefficients parse_coefficients(const std::string& text, ActivationType act);
CostCoefficients load_coefficients(const std::filesystem::path& path, ActivationType act);
/// Single-section file; the section name gives the activation type.
CostCoefficients load_coefficients(const std::filesystem::path& path);
std::string format_coefficients(const CostCoefficients& c);

struct TileShape {
  std::int64_t n = 1;
  std::int64_t m = 1;
  int group_size = 1;
  ActivationType act = ActivationType::Int8;

  double lut_count() const noexcept { return static_cast<double>(n) / group_size; }
  std::int64_t throughput() const noexcept { return n * m; }
  bool integral() const noexcept { return n % group_size == 0; }
};

/// Throws InvalidArgument unless n, m >= 1 and 1 <= mu <= 8.
TileShape make_shape(std::int64_t n, std::int64_t m, int group_size, ActivationType act);
TileShape shape_of(const TileConfig& cfg) noexcept;

double build_cost(const TileShape& s, BuildMode mode);
double accumulate_cost(const TileShape& s);
double mux_cost(const TileShape& s);
double outreg_cost(const TileShape& s);

inline double build_cost(const TileConfig& c, BuildMode mode) { return build_cost(shape_of(c), mode); }
inline double accumulate_cost(const TileConfig& c) { return accumulate_cost(shape_of(c)); }
inline double mux_cost(const TileConfig& c) { return mux_cost(shape_of(c)); }
inline double outreg_cost(const TileConfig& c) { return outreg_cost(shape_of(c)); }

struct CostBreakdown {
  double build_plus = 0.0;       // a_add * Build+
  double accumulate_plus = 0.0;  // a_add * Accumulate+
  double mux = 0.0;              // (a_mux + a_inv) * MUX
  double out_reg = 0.0;          // a_reg * OutReg
  double gamma = 1.0;
  double total = 0.0;            // gamma * (sum of the four terms)
  BuildMode mode = BuildMode::Fitted;

  double pre_gamma_sum() const noexcept { return build_plus + accumulate_plus + mux + out_reg; }
};

/// Throws InvalidArgument when coeffs.act differs from the shape's type.
CostBreakdown total_area(const TileShape& s, const CostCoefficients& coeffs, BuildMode mode = BuildMode::Fitted);
inline CostBreakdown total_area(const TileConfig& c, const CostCoefficients& coeffs,
                                BuildMode mode = BuildMode::Fitted) {
  return total_area(shape_of(c), coeffs, mode);
}

/// Variant that charges a_inv once per FAC unit (L * K) instead of once per
/// 2:1-mux equivalent.
double total_area_per_fac_inverters(const TileShape& s, const CostCoefficients& coeffs,
                                    BuildMode mode = BuildMode::Fitted);

/// Closed-form fitted area per unit of throughput:
///   gamma [ a_add (3.069^mu / (1.938 mu m) + 1/mu) + (a_mux + a_inv)(3^mu - 1)/(2 mu) + a_reg / n ]
double area_per_throughput(const TileShape& s, const CostCoefficients& coeffs);
inline double area_per_throughput(const TileConfig& c, const CostCoefficients& coeffs) {
  return area_per_throughput(shape_of(c), coeffs);
}

/// n, m -> infinity limit of area_per_throughput at fixed mu.
double area_per_throughput_limit(int group_size, const CostCoefficients& coeffs);

enum class BaselineKind { FullMultiply, SignFlip };
BaselineKind parse_baseline_kind(std::string_view text);
std::string_view to_string(BaselineKind kind) noexcept;

/// full multiply: gamma [ n m (a_mul + a_add) + m a_reg ]
/// sign flip:     gamma [ n m (2 a_mux + a_inv + a_add) + m a_reg ]
double baseline_area(BaselineKind kind, std::int64_t n, std::int64_t m, const CostCoefficients& coeffs);

struct CalibrationPoint {
  TileShape shape;
  double measured_area = 0.0;
};

/// Least-squares scale sum(model * measured) / sum(model^2) over pre-gamma
/// model values. Throws InvalidArgument on empty input or mixed types.
double calibrate_gamma(std::span<const CalibrationPoint> points, const CostCoefficients& coeffs,
                       BuildMode mode = BuildMode::Fitted);

}  // namespace tlut::cost
