// SPDX-License-Identifier: Apache-2.0
#include "tlut/lut_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace tlut::sim {

namespace {

void check_inputs(const TernaryMatrix& weights, const ActivationVector& x, const TileConfig& cfg) {
  if (x.activation() != cfg.activation()) {
    throw InvalidArgument("activation vector type does not match the tile configuration");
  }
  if (x.size() != weights.cols()) {
    throw InvalidArgument("activation length " + std::to_string(x.size()) + " does not match matrix columns " +
                          std::to_string(weights.cols()));
  }
}

}  // namespace

OutputVector gemv(const TernaryMatrix& weights, const ActivationVector& x, const TileConfig& cfg) {
  check_inputs(weights, x, cfg);
  if (cfg.activation() == ActivationType::Int8) return gemv<Int8Arith>(weights, x.int8_values(), cfg);
  return gemv<Fp16Arith>(weights, x.fp16_values(), cfg);
}

OutputVector reference_gemv(const TernaryMatrix& weights, const ActivationVector& x, const TileConfig& cfg) {
  check_inputs(weights, x, cfg);
  if (cfg.activation() == ActivationType::Int8) return reference_gemv<Int8Arith>(weights, x.int8_values(), cfg);
  return reference_gemv<Fp16Arith>(weights, x.fp16_values(), cfg);
}

std::vector<double> reference_gemv_f64(const TernaryMatrix& weights, const ActivationVector& x) {
  if (x.size() != weights.cols()) throw InvalidArgument("activation length does not match matrix columns");
  std::vector<double> xd(x.size());
  if (x.activation() == ActivationType::Int8) {
    const auto v = x.int8_values();
    std::transform(v.begin(), v.end(), xd.begin(), [](std::int8_t a) { return static_cast<double>(a); });
  } else {
    const auto v = x.fp16_values();
    std::transform(v.begin(), v.end(), xd.begin(), [](fp16::Half a) { return fp16::to_double(a); });
  }
  std::vector<double> y(weights.rows(), 0.0);
  for (std::size_t r = 0; r < weights.rows(); ++r) {
    const auto row = weights.row(r);
    double sum = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) sum += to_int(row[c]) * xd[c];
    y[r] = sum;
  }
  return y;
}

std::vector<double> to_doubles(const OutputVector& y) {
  if (const auto* ints = std::get_if<std::vector<std::int32_t>>(&y)) {
    return std::vector<double>(ints->begin(), ints->end());
  }
  const auto& halves = std::get<std::vector<fp16::Half>>(y);
  std::vector<double> out(halves.size());
  std::transform(halves.begin(), halves.end(), out.begin(), [](fp16::Half h) { return fp16::to_double(h); });
  return out;
}

int build_latency(int group_size) {
  if (group_size < 1 || group_size > kMaxGroupSize) throw InvalidArgument("mu must be in [1, 8]");
  return static_cast<int>(std::bit_width(static_cast<unsigned>(group_size - 1))) + 1;
}

std::uint64_t cycle_count(const TileConfig& cfg, std::uint64_t rows, std::uint64_t cols, bool overlap) {
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be >= 1");
  const auto n = static_cast<std::uint64_t>(cfg.n());
  const auto m = static_cast<std::uint64_t>(cfg.m());
  const std::uint64_t input_tiles = (cols + n - 1) / n;
  const std::uint64_t output_tiles = (rows + m - 1) / m;
  const auto depth = static_cast<std::uint64_t>(build_latency(cfg.group_size()));
  return input_tiles * output_tiles + (overlap ? depth : input_tiles * depth);
}

AccuracyReport accuracy(const OutputVector& y, std::span<const double> exact) {
  const auto got = to_doubles(y);
  if (got.size() != exact.size()) throw InvalidArgument("accuracy: length mismatch");
  AccuracyReport r;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double err = std::fabs(got[i] - exact[i]);
    r.max_abs_error = std::max(r.max_abs_error, err);
    if (exact[i] != 0.0) r.max_rel_error = std::max(r.max_rel_error, err / std::fabs(exact[i]));
    r.mean_abs_error += err;
  }
  if (!got.empty()) r.mean_abs_error /= static_cast<double>(got.size());
  return r;
}

}  // namespace tlut::sim
