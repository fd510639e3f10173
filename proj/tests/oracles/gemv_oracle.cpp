// SPDX-License-Identifier: Apache-2.0
#include "gemv_oracle.hpp"

#include "half_oracle.hpp"

namespace tlut::oracle {

std::vector<std::int64_t> direct_mac(const TernaryMatrix& w, std::span<const std::int8_t> x) {
  std::vector<std::int64_t> y(w.rows(), 0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < w.cols(); ++c) {
      const int t = static_cast<int>(w.at(r, c));
      if (t == 1) y[r] += x[c];
      if (t == -1) y[r] -= x[c];
    }
  }
  return y;
}

std::vector<std::uint16_t> arch_order_fp16(const TernaryMatrix& w, std::span<const std::uint16_t> x, int L, int mu,
                                           int K) {
  const std::size_t N = w.cols();
  const std::size_t n = static_cast<std::size_t>(L) * mu;
  const std::size_t tiles = (N + n - 1) / n;

  auto group = [&](std::size_t r, std::size_t begin) -> std::uint16_t {
    int lead = 0;
    std::uint16_t acc = 0;
    for (std::size_t c = begin; c < begin + static_cast<std::size_t>(mu) && c < N; ++c) {
      const int t = static_cast<int>(w.at(r, c));
      if (t == 0) continue;
      if (lead == 0) {
        lead = t;
        acc = x[c];
      } else {
        acc = half_add(acc, t == lead ? x[c] : static_cast<std::uint16_t>(x[c] ^ 0x8000));
      }
    }
    return lead < 0 ? static_cast<std::uint16_t>(acc ^ 0x8000) : acc;
  };

  // Output tiles of K rows only regroup work; the per-row order is the same.
  (void)K;
  std::vector<std::uint16_t> y(w.rows(), 0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t t = 0; t < tiles; ++t) {
      std::uint16_t partial = group(r, t * n);
      for (int l = 1; l < L; ++l) partial = half_add(partial, group(r, t * n + static_cast<std::size_t>(l) * mu));
      y[r] = half_add(y[r], partial);
    }
  }
  return y;
}

}  // namespace tlut::oracle
