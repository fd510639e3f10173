// SPDX-License-Identifier: Apache-2.0
//
// Design-space exploration over (L, mu, K) for one activation type.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tlut/cost_model.hpp"
#include "tlut/types.hpp"

namespace tlut::dse {

struct DesignPoint {
  cost::TileShape shape;
  double area = 0.0;        // gamma-scaled total
  double throughput = 0.0;  // n * m multiplications per cycle
  double efficiency = 0.0;  // throughput / area
  cost::CostBreakdown breakdown;

  double lut_count() const noexcept { return shape.lut_count(); }
  /// Set when n is a multiple of mu.
  std::optional<TileConfig> config() const;
};

DesignPoint evaluate(const cost::TileShape& shape, const cost::CostCoefficients& coeffs,
                     cost::BuildMode mode = cost::BuildMode::Fitted);

struct IntRange {
  int lo = 1;
  int hi = 1;
};
IntRange parse_int_range(const std::string& text);             // "a-b" or "a"
std::vector<std::int64_t> parse_int_list(const std::string& text);  // "a,b,c"

struct ThroughputTarget {
  std::int64_t target = 1;
  double tolerance = 0.02;  // relative half-width of the band

  bool contains(std::int64_t throughput) const noexcept;
};

struct SweepSpec {
  cost::CostCoefficients coeffs;
  cost::BuildMode mode = cost::BuildMode::Fitted;
  IntRange mu{1, 5};
  /// Grid mode when non-empty: square tiles n = m = size with L = n / mu.
  std::vector<std::int64_t> square_sizes;
  /// Range mode (square_sizes empty).
  IntRange lut_count{1, 1};
  IntRange fetchers{1, 1};
  bool square_only = false;
  /// Grid mode: drop sizes not divisible by mu instead of evaluating them.
  bool integral_only = false;
  std::optional<ThroughputTarget> throughput;

  /// Throws InvalidArgument for empty ranges or a tolerance outside [0, 1).
  void validate() const;
};

struct SweepResult {
  std::vector<DesignPoint> points;   // ordered by (mu, L, K)
  std::vector<std::string> skipped;  // grid points dropped by integral_only
};

SweepResult sweep(const SweepSpec& spec);

/// Parses a [sweep] section; relative coefficient paths resolve against base_dir.
/// `act` overrides the file's activation type. Coefficients come from
/// coeffs_<act> when present, else from coeffs.
SweepSpec parse_sweep_spec(const std::string& text, const std::filesystem::path& base_dir,
                           std::optional<ActivationType> act = std::nullopt);
SweepSpec load_sweep_spec(const std::filesystem::path& path, std::optional<ActivationType> act = std::nullopt);

struct MuSearch {
  cost::BuildMode mode = cost::BuildMode::Fitted;
  int max_group_size = kMaxGroupSize;
  bool integral_only = false;
};

/// mu in [1, min(n, max)] minimising total area at the fixed (n, m); ties go
/// to the smaller mu. Throws InvalidArgument when no mu is feasible.
int optimal_mu(std::int64_t n, std::int64_t m, const cost::CostCoefficients& coeffs, const MuSearch& search = {});

struct ThroughputSearch {
  bool rectangular = true;
  double tolerance = 0.02;
  int max_group_size = kMaxGroupSize;
  cost::BuildMode mode = cost::BuildMode::Fitted;
};

/// Minimum-area integral configuration with n * m inside the throughput band.
/// Ties: higher throughput, then smaller mu, then larger m.
/// Throws NoFeasibleDesign when the band holds no configuration.
DesignPoint optimal_for_throughput(std::int64_t target, const cost::CostCoefficients& coeffs,
                                   const ThroughputSearch& search = {});

/// Points not dominated in (lower area, higher throughput), by throughput.
std::vector<DesignPoint> pareto_frontier(std::span<const DesignPoint> points);

struct GeometryCell {
  DesignPoint point;
  double delta = 0.0;  // 1 - (area/throughput) / (square reference area/throughput)
  bool square_reference = false;
};

struct GeometryScan {
  std::vector<GeometryCell> cells;  // square reference first, then by (mu, L, K)
  std::size_t argmin = 0;
};

struct GeometrySearch {
  double tolerance = 0.02;
  int max_group_size = kMaxGroupSize;
  cost::BuildMode mode = cost::BuildMode::Fitted;
};

/// Every integral (L, mu, K) with L * mu * K in the band around total_tile,
/// compared against the square tile sqrt(total_tile)^2 at its optimal mu.
/// Throws InvalidArgument unless total_tile is a perfect square.
GeometryScan geometry_scan(std::int64_t total_tile, const cost::CostCoefficients& coeffs,
                           const GeometrySearch& search = {});

struct EfficiencySample {
  std::int64_t size = 0;
  int optimal_group_size = 1;
  double efficiency = 0.0;
};

/// Square tiles at their optimal mu. Sizes must be strictly ascending.
std::vector<EfficiencySample> efficiency_vs_tilesize(std::span<const std::int64_t> sizes,
                                                     const cost::CostCoefficients& coeffs,
                                                     const MuSearch& search = {});

/// Best achievable efficiency as n, m -> infinity (fitted model).
double efficiency_limit(const cost::CostCoefficients& coeffs, int max_group_size = kMaxGroupSize);

struct SotaEntry {
  std::string name;
  int lut_count = 1;
  int group_size = 1;
  int fetchers = 1;
  ActivationType act = ActivationType::Int8;
  std::optional<double> reported_area;
  std::string area_unit;
  std::optional<double> clock_mhz;
  std::optional<double> area_scale;   // technology area multiplier
  std::optional<double> delay_scale;  // technology delay multiplier
  std::optional<double> compare_area; // area of a matched design, same unit
};

std::vector<SotaEntry> parse_sota_entries(const std::string& text);
std::vector<SotaEntry> load_sota_entries(const std::filesystem::path& path);

struct SotaReport {
  SotaEntry entry;
  std::int64_t throughput = 0;
  DesignPoint published;
  DesignPoint optimum;
  double area_ratio = 0.0;  // published / optimum modelled area
  std::optional<double> scaled_area;
  std::optional<double> scaled_clock_mhz;
  std::optional<double> area_decrease;  // scaled_area / compare_area
};

SotaReport compare_sota(const SotaEntry& entry, const cost::CostCoefficients& coeffs,
                        const ThroughputSearch& search = {});

/// Columns: L,mu,K,act,n,m,throughput,build_area,accumulate_area,mux_area,
/// reg_area,total_area,efficiency. Per-term areas are gamma-scaled so they
/// sum to total_area.
void write_points_csv(std::ostream& out, std::span<const DesignPoint> points);
void write_points_csv_header(std::ostream& out);
void write_point_csv_row(std::ostream& out, const DesignPoint& p);

}  // namespace tlut::dse
