// SPDX-License-Identifier: Apache-2.0
//
// Bit-accurate functional model of the two-phase LUT GEMV.
//
// Build phase: each group of mu activations feeds the optimised adder DAG,
// producing the (3^mu - 1) / 2 positive-half partial sums.
// Fetch & accumulate phase: every encoded weight key selects one entry,
// negated when its sign bit is set; the L fetches of one output are summed in
// ascending LUT order and added into the output-stationary accumulator.
//
// Reduction order (fixed, so FP16 results are reproducible):
//   within a LUT entry   DAG order (prefix entry first, then the new tap)
//   within a tile        fetch 0, then + fetch 1, + fetch 2, ... + fetch L-1
//   across tiles         accumulator starts at +0 and adds each tile's partial
//                        sum in ascending input-tile order
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tlut/adder_dag.hpp"
#include "tlut/arith.hpp"
#include "tlut/encoder.hpp"
#include "tlut/errors.hpp"
#include "tlut/types.hpp"

namespace tlut::sim {

template <class Arith>
struct LutTable {
  int group_size = 1;
  std::vector<typename Arith::Entry> entries;  // entries[v - 1]
};

template <class Arith>
LutTable<Arith> build_lut(std::span<const typename Arith::Input> x) {
  if (x.empty() || x.size() > static_cast<std::size_t>(kMaxGroupSize)) {
    throw InvalidArgument("LUT group must hold 1..8 activations");
  }
  const auto& dag = dag::optimized_dag(static_cast<int>(x.size()));
  return LutTable<Arith>{static_cast<int>(x.size()), dag.evaluate<Arith>(x)};
}

template <class Arith>
typename Arith::Entry fac_fetch(const LutTable<Arith>& table, const enc::GroupKey& key) {
  if (key.group_size != table.group_size) throw InvalidArgument("key group size does not match LUT");
  enc::validate_key(key);
  if (key.magnitude == 0) return Arith::zero_entry();
  const auto entry = table.entries[key.magnitude - 1];
  return key.negative ? Arith::negate(entry) : entry;
}

namespace detail {

// keys[k * L + l] addresses luts[l] for output k.
template <class Arith>
void mac_tile(std::span<const LutTable<Arith>> luts, std::span<const enc::GroupKey> keys,
              std::span<typename Arith::Acc> partials) {
  const std::size_t L = luts.size();
  for (std::size_t k = 0; k < partials.size(); ++k) {
    auto partial = Arith::to_acc(fac_fetch(luts[0], keys[k * L]));
    for (std::size_t l = 1; l < L; ++l) partial = Arith::accumulate(partial, fac_fetch(luts[l], keys[k * L + l]));
    partials[k] = partial;
  }
}

template <class Arith>
std::vector<typename Arith::Input> padded_group(std::span<const typename Arith::Input> x, std::size_t begin,
                                                std::size_t mu) {
  std::vector<typename Arith::Input> group(mu, typename Arith::Input{});
  for (std::size_t i = 0; i < mu && begin + i < x.size(); ++i) group[i] = x[begin + i];
  return group;
}

}  // namespace detail

/// One tile: x_tile holds n = L * mu activations, w_tile holds K * L keys
/// (output-major). Returns the K spatially reduced partial sums.
template <class Arith>
std::vector<typename Arith::Acc> tile_mac(const TileConfig& cfg, std::span<const typename Arith::Input> x_tile,
                                          std::span<const enc::GroupKey> w_tile) {
  const auto L = static_cast<std::size_t>(cfg.lut_count());
  const auto mu = static_cast<std::size_t>(cfg.group_size());
  const auto K = static_cast<std::size_t>(cfg.fetchers_per_lut());
  if (x_tile.size() != L * mu) throw InvalidArgument("x_tile length must equal n = L * mu");
  if (w_tile.size() != L * K) throw InvalidArgument("w_tile must hold L keys per output");
  std::vector<LutTable<Arith>> luts;
  luts.reserve(L);
  for (std::size_t l = 0; l < L; ++l) luts.push_back(build_lut<Arith>(x_tile.subspan(l * mu, mu)));
  std::vector<typename Arith::Acc> partials(K);
  detail::mac_tile<Arith>(luts, w_tile, partials);
  return partials;
}

/// y = W x with output-stationary tiling. LUTs are built once per activation
/// group and reused by every output tile.
template <class Arith>
std::vector<typename Arith::Acc> gemv(const TernaryMatrix& weights, std::span<const typename Arith::Input> x,
                                      const TileConfig& cfg) {
  if (x.size() != weights.cols()) throw InvalidArgument("activation length does not match matrix columns");
  const std::size_t M = weights.rows();
  const std::size_t N = weights.cols();
  const auto L = static_cast<std::size_t>(cfg.lut_count());
  const auto mu = static_cast<std::size_t>(cfg.group_size());
  const auto m = static_cast<std::size_t>(cfg.fetchers_per_lut());
  const std::size_t n = L * mu;
  const std::size_t groups = (N + mu - 1) / mu;
  const std::size_t input_tiles = (N + n - 1) / n;

  const auto keys = enc::encode_keys(weights, cfg.group_size());
  const enc::GroupKey zero_key{false, 0, cfg.group_size()};

  std::vector<LutTable<Arith>> luts;
  luts.reserve(input_tiles * L);
  for (std::size_t g = 0; g < input_tiles * L; ++g) {
    const auto group = detail::padded_group<Arith>(x, g * mu, mu);
    luts.push_back(build_lut<Arith>(std::span<const typename Arith::Input>(group)));
  }

  std::vector<typename Arith::Acc> y(M, Arith::zero_acc());
  std::vector<enc::GroupKey> w_tile(m * L);
  std::vector<typename Arith::Acc> partials(m);
  for (std::size_t row0 = 0; row0 < M; row0 += m) {
    const std::size_t rows = std::min(m, M - row0);
    for (std::size_t t = 0; t < input_tiles; ++t) {
      for (std::size_t k = 0; k < rows; ++k) {
        for (std::size_t l = 0; l < L; ++l) {
          const std::size_t g = t * L + l;
          w_tile[k * L + l] = g < groups ? keys[(row0 + k) * groups + g] : zero_key;
        }
      }
      const std::span<const LutTable<Arith>> tile_luts(luts.data() + t * L, L);
      detail::mac_tile<Arith>(tile_luts, std::span<const enc::GroupKey>(w_tile).first(rows * L),
                              std::span<typename Arith::Acc>(partials).first(rows));
      for (std::size_t k = 0; k < rows; ++k) y[row0 + k] = Arith::accumulate(y[row0 + k], partials[k]);
    }
  }
  return y;
}

/// Oracle: same tiling and summation order as gemv, but every group term is
/// formed by direct conditional accumulation over the weight trits, with no
/// LUT, DAG or key encoding involved.
template <class Arith>
std::vector<typename Arith::Acc> reference_gemv(const TernaryMatrix& weights,
                                                std::span<const typename Arith::Input> x, const TileConfig& cfg) {
  if (x.size() != weights.cols()) throw InvalidArgument("activation length does not match matrix columns");
  const std::size_t M = weights.rows();
  const std::size_t N = weights.cols();
  const auto L = static_cast<std::size_t>(cfg.lut_count());
  const auto mu = static_cast<std::size_t>(cfg.group_size());
  const auto m = static_cast<std::size_t>(cfg.fetchers_per_lut());
  const std::size_t n = L * mu;
  const std::size_t input_tiles = (N + n - 1) / n;

  auto group_term = [&](std::span<const Trit> row, std::size_t begin) {
    int leading = 0;
    typename Arith::Entry sum = Arith::zero_entry();
    for (std::size_t i = begin; i < begin + mu && i < N; ++i) {
      const int w = to_int(row[i]);
      if (w == 0) continue;
      if (leading == 0) {
        leading = w;
        sum = Arith::widen(x[i]);
      } else {
        sum = (w == leading) ? Arith::add(sum, Arith::widen(x[i])) : Arith::sub(sum, Arith::widen(x[i]));
      }
    }
    return leading < 0 ? Arith::negate(sum) : sum;
  };

  std::vector<typename Arith::Acc> y(M, Arith::zero_acc());
  for (std::size_t row0 = 0; row0 < M; row0 += m) {
    const std::size_t rows = std::min(m, M - row0);
    for (std::size_t t = 0; t < input_tiles; ++t) {
      for (std::size_t k = 0; k < rows; ++k) {
        const auto row = weights.row(row0 + k);
        auto partial = Arith::to_acc(group_term(row, t * n));
        for (std::size_t l = 1; l < L; ++l) partial = Arith::accumulate(partial, group_term(row, t * n + l * mu));
        y[row0 + k] = Arith::accumulate(y[row0 + k], partial);
      }
    }
  }
  return y;
}

using OutputVector = std::variant<std::vector<std::int32_t>, std::vector<fp16::Half>>;

/// Type-erased entry points. Throw InvalidArgument on dimension or activation
/// type mismatch between W, x and cfg.
OutputVector gemv(const TernaryMatrix& weights, const ActivationVector& x, const TileConfig& cfg);
OutputVector reference_gemv(const TernaryMatrix& weights, const ActivationVector& x, const TileConfig& cfg);

/// Plain y = W x accumulated in float64, for accuracy reporting.
std::vector<double> reference_gemv_f64(const TernaryMatrix& weights, const ActivationVector& x);

std::vector<double> to_doubles(const OutputVector& y);

/// Build-phase latency in cycles: ceil(log2 mu) + 1.
int build_latency(int group_size);

/// Fetch cycles ceil(N/n) * ceil(M/m) plus build latency: once when the next
/// LUT build overlaps the current fetches, once per input tile otherwise.
std::uint64_t cycle_count(const TileConfig& cfg, std::uint64_t rows, std::uint64_t cols, bool overlap = true);

struct AccuracyReport {
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  double mean_abs_error = 0.0;
};

AccuracyReport accuracy(const OutputVector& y, std::span<const double> exact);

}  // namespace tlut::sim
