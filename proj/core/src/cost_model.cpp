// SPDX-License-Identifier: Apache-2.0
#include "tlut/cost_model.hpp"

#include <cmath>
#include <sstream>

#include "ini.hpp"
#include "tlut/adder_dag.hpp"
#include "tlut/errors.hpp"
#include "tlut/matrix_io.hpp"

namespace tlut::cost {

namespace {

double fitted_adders_per_lut(int group_size) {
  return std::pow(kBuildFitBase, group_size) / kBuildFitScale;
}

CostCoefficients coefficients_from_section(const detail::IniSection& section) {
  CostCoefficients c;
  try {
    c.act = parse_activation_type(section.name);
  } catch (const InvalidArgument&) {
    throw ConfigError("coefficient section [" + section.name + "] is not an activation type");
  }
  c.a_add = section.require_double("a_add");
  c.a_mux = section.require_double("a_mux");
  c.a_inv = section.require_double("a_inv");
  c.a_reg = section.require_double("a_reg");
  c.a_mul = section.require_double("a_mul");
  c.gamma = section.require_double("gamma");
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("section [" + section.name + "]: " + e.what());
  }
  return c;
}

}  // namespace

std::string_view to_string(BuildMode mode) noexcept { return mode == BuildMode::Fitted ? "fitted" : "exact"; }

void CostCoefficients::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be > 0");
  };
  positive(a_add, "a_add");
  positive(a_mux, "a_mux");
  positive(a_reg, "a_reg");
  positive(a_mul, "a_mul");
  positive(gamma, "gamma");
  if (!(a_inv >= 0.0) || !std::isfinite(a_inv)) throw InvalidArgument("a_inv must be >= 0");
}

std::vector<CostCoefficients> parse_coefficients(const std::string& text) {
  std::vector<CostCoefficients> out;
  for (const auto& section : detail::parse_ini(text)) out.push_back(coefficients_from_section(section));
  if (out.empty()) throw ConfigError("coefficient file has no sections");
  return out;
}

CostCoefficients parse_coefficients(const std::string& text, ActivationType act) {
  for (const auto& c : parse_coefficients(text)) {
    if (c.act == act) return c;
  }
  throw ConfigError("coefficient file has no [" + std::string(tlut::to_string(act)) + "] section");
}

CostCoefficients load_coefficients(const std::filesystem::path& path, ActivationType act) {
  return parse_coefficients(io::read_file_text(path), act);
}

CostCoefficients load_coefficients(const std::filesystem::path& path) {
  const auto all = parse_coefficients(io::read_file_text(path));
  if (all.size() != 1) throw ConfigError("'" + path.string() + "' must hold exactly one section");
  return all.front();
}

std::string format_coefficients(const CostCoefficients& c) {
  std::ostringstream out;
  out << '[' << tlut::to_string(c.act) << "]\n"
      << "a_add = " << io::format_double(c.a_add) << '\n'
      << "a_mux = " << io::format_double(c.a_mux) << '\n'
      << "a_inv = " << io::format_double(c.a_inv) << '\n'
      << "a_reg = " << io::format_double(c.a_reg) << '\n'
      << "a_mul = " << io::format_double(c.a_mul) << '\n'
      << "gamma = " << io::format_double(c.gamma) << '\n';
  return out.str();
}

TileShape make_shape(std::int64_t n, std::int64_t m, int group_size, ActivationType act) {
  if (n < 1 || m < 1) throw InvalidArgument("tile dimensions must be >= 1");
  if (group_size < 1 || group_size > kMaxGroupSize) throw InvalidArgument("mu must be in [1, 8]");
  return TileShape{n, m, group_size, act};
}

TileShape shape_of(const TileConfig& cfg) noexcept {
  return TileShape{cfg.n(), cfg.m(), cfg.group_size(), cfg.activation()};
}

double build_cost(const TileShape& s, BuildMode mode) {
  if (mode == BuildMode::Fitted) return fitted_adders_per_lut(s.group_size) * s.lut_count();
  return static_cast<double>(dag::optimized_adder_count(s.group_size)) * s.lut_count();
}

double accumulate_cost(const TileShape& s) {
  return static_cast<double>(s.n) * static_cast<double>(s.m) / s.group_size;
}

double mux_cost(const TileShape& s) {
  return accumulate_cost(s) * static_cast<double>(lut_table_size(s.group_size));
}

double outreg_cost(const TileShape& s) { return static_cast<double>(s.m); }

CostBreakdown total_area(const TileShape& s, const CostCoefficients& coeffs, BuildMode mode) {
  if (coeffs.act != s.act) throw InvalidArgument("coefficient activation type does not match the tile");
  CostBreakdown b;
  b.mode = mode;
  b.gamma = coeffs.gamma;
  b.build_plus = coeffs.a_add * build_cost(s, mode);
  b.accumulate_plus = coeffs.a_add * accumulate_cost(s);
  b.mux = (coeffs.a_mux + coeffs.a_inv) * mux_cost(s);
  b.out_reg = coeffs.a_reg * outreg_cost(s);
  b.total = coeffs.gamma * b.pre_gamma_sum();
  return b;
}

double total_area_per_fac_inverters(const TileShape& s, const CostCoefficients& coeffs, BuildMode mode) {
  if (coeffs.act != s.act) throw InvalidArgument("coefficient activation type does not match the tile");
  const double sum = coeffs.a_add * (build_cost(s, mode) + accumulate_cost(s)) + coeffs.a_mux * mux_cost(s) +
                     coeffs.a_inv * accumulate_cost(s) + coeffs.a_reg * outreg_cost(s);
  return coeffs.gamma * sum;
}

double area_per_throughput(const TileShape& s, const CostCoefficients& coeffs) {
  if (coeffs.act != s.act) throw InvalidArgument("coefficient activation type does not match the tile");
  const double mu = s.group_size;
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.m);
  const double build = std::pow(kBuildFitBase, mu) / (kBuildFitScale * mu) / m;
  const double readout = (std::pow(3.0, mu) - 1.0) / (2.0 * mu);
  return coeffs.gamma * (coeffs.a_add * (build + 1.0 / mu) + (coeffs.a_mux + coeffs.a_inv) * readout + coeffs.a_reg / n);
}

double area_per_throughput_limit(int group_size, const CostCoefficients& coeffs) {
  if (group_size < 1 || group_size > kMaxGroupSize) throw InvalidArgument("mu must be in [1, 8]");
  const double mu = group_size;
  return coeffs.gamma *
         (coeffs.a_add / mu + (coeffs.a_mux + coeffs.a_inv) * (std::pow(3.0, mu) - 1.0) / (2.0 * mu));
}

BaselineKind parse_baseline_kind(std::string_view text) {
  if (text == "full_mult") return BaselineKind::FullMultiply;
  if (text == "sign_flip") return BaselineKind::SignFlip;
  throw InvalidArgument("unknown baseline kind '" + std::string(text) + "' (expected full_mult or sign_flip)");
}

std::string_view to_string(BaselineKind kind) noexcept {
  return kind == BaselineKind::FullMultiply ? "full_mult" : "sign_flip";
}

double baseline_area(BaselineKind kind, std::int64_t n, std::int64_t m, const CostCoefficients& coeffs) {
  if (n < 1 || m < 1) throw InvalidArgument("baseline tile dimensions must be >= 1");
  const double pes = static_cast<double>(n) * static_cast<double>(m);
  const double per_pe = kind == BaselineKind::FullMultiply ? coeffs.a_mul + coeffs.a_add
                                                           : 2.0 * coeffs.a_mux + coeffs.a_inv + coeffs.a_add;
  return coeffs.gamma * (pes * per_pe + static_cast<double>(m) * coeffs.a_reg);
}

double calibrate_gamma(std::span<const CalibrationPoint> points, const CostCoefficients& coeffs, BuildMode mode) {
  if (points.empty()) throw InvalidArgument("calibration needs at least one point");
  double cross = 0.0;
  double square = 0.0;
  for (const auto& p : points) {
    if (p.shape.act != points.front().shape.act) {
      throw InvalidArgument("calibration points mix activation types");
    }
    const double model = total_area(p.shape, coeffs, mode).pre_gamma_sum();
    cross += model * p.measured_area;
    square += model * model;
  }
  return cross / square;
}

}  // namespace tlut::cost
