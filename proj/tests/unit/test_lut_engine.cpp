// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "generators.hpp"
#include "gemv_oracle.hpp"
#include "half_oracle.hpp"
#include "tlut/errors.hpp"
#include "tlut/lut_engine.hpp"

namespace tlut::sim {
namespace {

using enc::GroupKey;

std::vector<std::int32_t> as_int(const OutputVector& y) { return std::get<std::vector<std::int32_t>>(y); }

std::vector<std::uint16_t> as_bits(const OutputVector& y) {
  std::vector<std::uint16_t> out;
  for (auto h : std::get<std::vector<fp16::Half>>(y)) out.push_back(h.bits);
  return out;
}

std::vector<std::uint16_t> bits_of(std::span<const fp16::Half> x) {
  std::vector<std::uint16_t> out;
  for (auto h : x) out.push_back(h.bits);
  return out;
}

TEST(BuildLut, TwoInputExample) {
  const std::vector<std::int8_t> x = {3, -5};
  const auto t = build_lut<Int8Arith>(x);
  EXPECT_EQ(t.entries, (std::vector<std::int16_t>{-5, 8, 3, -2}));
  EXPECT_EQ(fac_fetch(t, GroupKey{false, 2, 2}), 8);
  EXPECT_EQ(fac_fetch(t, GroupKey{true, 2, 2}), -8);
  EXPECT_EQ(fac_fetch(t, GroupKey{false, 0, 2}), 0);
  EXPECT_THROW(fac_fetch(t, GroupKey{true, 0, 2}), CorruptStream);
  EXPECT_THROW(fac_fetch(t, GroupKey{false, 1, 3}), InvalidArgument);
}

TEST(BuildLut, SingleInputAndAllOnes) {
  const std::vector<std::int8_t> a = {-7};
  EXPECT_EQ(build_lut<Int8Arith>(a).entries, (std::vector<std::int16_t>{-7}));
  const std::vector<std::int8_t> ones = {1, 1, 1};
  const auto t = build_lut<Int8Arith>(ones);
  EXPECT_EQ(t.entries[12], 3);  // (+1, +1, +1)
  EXPECT_EQ(t.entries[8], 1);   // (+1, 0, 0)
  EXPECT_EQ(t.entries[7], 0);   // (+1, 0, -1)
}

TEST(BuildLut, ExtremeInt8EntriesFitInSixteenBits) {
  const std::vector<std::int8_t> lo(8, -128);
  const auto t = build_lut<Int8Arith>(lo);
  EXPECT_EQ(t.entries.back(), -1024);  // all +1
}

TEST(FacFetch, NegatedKeyNegatesEntry) {
  gen::Rng rng(9);
  for (int mu = 1; mu <= 5; ++mu) {
    const auto x = gen::int8s(rng, static_cast<std::size_t>(mu));
    const auto t = build_lut<Int8Arith>(x);
    const auto h = gen::halves(rng, static_cast<std::size_t>(mu));
    const auto th = build_lut<Fp16Arith>(h);
    for (std::uint32_t v = 1; v <= lut_table_size(mu); ++v) {
      const GroupKey k{false, v, mu};
      EXPECT_EQ(fac_fetch(t, enc::negated(k)), -fac_fetch(t, k));
      EXPECT_EQ(fac_fetch(th, enc::negated(k)), fp16::negate(fac_fetch(th, k)));
    }
  }
}

TEST(TileMac, RowSumAndZeroWeights) {
  const TileConfig cfg(2, 2, 1, ActivationType::Int8);
  const std::vector<std::int8_t> x = {1, 2, 3, 4};
  const std::vector<GroupKey> plus = {{false, 4, 2}, {false, 4, 2}};
  EXPECT_EQ(tile_mac<Int8Arith>(cfg, x, plus), (std::vector<std::int32_t>{10}));
  const std::vector<GroupKey> zero = {{false, 0, 2}, {false, 0, 2}};
  EXPECT_EQ(tile_mac<Int8Arith>(cfg, x, zero), (std::vector<std::int32_t>{0}));
  EXPECT_THROW(tile_mac<Int8Arith>(cfg, std::span(x).first(3), plus), InvalidArgument);
}

TEST(TileMac, RandomTileAgainstDotProducts) {
  gen::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto cfg = gen::tile(rng, ActivationType::Int8, 5, 4, 6);
    const auto n = static_cast<std::size_t>(cfg.n());
    const auto m = static_cast<std::size_t>(cfg.m());
    const auto w = gen::matrix(rng, m, n);
    const auto x = gen::int8s(rng, n);
    const auto keys = enc::encode_keys(w, cfg.group_size());
    const auto got = tile_mac<Int8Arith>(cfg, x, keys);
    const auto want = oracle::direct_mac(w, x);
    for (std::size_t k = 0; k < m; ++k) EXPECT_EQ(got[k], want[k]);
  }
}

TEST(Gemv, IdentityAndNegatedRowSums) {
  std::vector<Trit> eye(64, Trit::Zero);
  for (int i = 0; i < 8; ++i) eye[static_cast<std::size_t>(i * 8 + i)] = Trit::Plus;
  const TernaryMatrix id(8, 8, eye);
  const std::vector<std::int8_t> x = {5, -3, 0, 127, -128, 1, 2, 3};
  const TileConfig cfg(2, 3, 4, ActivationType::Int8);
  const auto y = as_int(gemv(id, ActivationVector::from_int8(x), cfg));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(y[i], x[i]);

  gen::Rng rng(4);
  const auto h = gen::halves(rng, 8);
  const auto yh = std::get<std::vector<fp16::Half>>(
      gemv(id, ActivationVector::from_fp16(h), TileConfig(2, 3, 4, ActivationType::Fp16)));
  for (std::size_t i = 0; i < 8; ++i) {
    // +0 accumulator plus -0 gives +0; every other value passes through.
    EXPECT_EQ(yh[i], h[i] == fp16::kNegativeZero ? fp16::kPositiveZero : h[i]);
  }

  const TernaryMatrix minus(4, 4, std::vector<Trit>(16, Trit::Minus));
  const std::vector<std::int8_t> x4 = {1, 2, 3, 4};
  EXPECT_EQ(as_int(gemv(minus, ActivationVector::from_int8(x4), TileConfig(1, 2, 2, ActivationType::Int8))),
            (std::vector<std::int32_t>{-10, -10, -10, -10}));
}

TEST(Gemv, RejectsMismatchedInputs) {
  const TernaryMatrix w(2, 3);
  EXPECT_THROW(gemv(w, ActivationVector::from_int8({1, 2}), TileConfig(1, 1, 1, ActivationType::Int8)),
               InvalidArgument);
  EXPECT_THROW(gemv(w, ActivationVector::from_int8({1, 2, 3}), TileConfig(1, 1, 1, ActivationType::Fp16)),
               InvalidArgument);
}

TEST(Gemv, Int8MatchesOraclesOnRandomInstances) {
  gen::Rng rng(1234);
  for (int i = 0; i < 300; ++i) {
    const auto M = static_cast<std::size_t>(gen::uniform(rng, 1, 96));
    const auto N = static_cast<std::size_t>(gen::uniform(rng, 1, 96));
    const auto cfg = gen::tile(rng, ActivationType::Int8, 5, 8, 16);
    const auto w = gen::matrix(rng, M, N);
    const auto x = gen::int8s(rng, N);
    const auto xv = ActivationVector::from_int8(x);
    const auto y = as_int(gemv(w, xv, cfg));
    ASSERT_EQ(y, as_int(reference_gemv(w, xv, cfg)));
    const auto direct = oracle::direct_mac(w, x);
    for (std::size_t r = 0; r < M; ++r) ASSERT_EQ(y[r], direct[r]);
  }
}

TEST(Gemv, Int8ExhaustiveTwoByTwo) {
  const std::vector<std::vector<std::int8_t>> xs = {{0, 0}, {1, -1}, {127, -128}, {-128, -128}, {5, 7}};
  int matrices = 0;
  for (int code = 0; code < 81; ++code) {
    std::vector<Trit> data(4);
    int c = code;
    for (auto& t : data) {
      t = trit_from_int(c % 3 - 1);
      c /= 3;
    }
    const TernaryMatrix w(2, 2, data);
    ++matrices;
    for (const auto& x : xs) {
      const auto want = oracle::direct_mac(w, x);
      for (int mu = 1; mu <= 3; ++mu) {
        for (int L = 1; L <= 2; ++L) {
          for (int K = 1; K <= 2; ++K) {
            const TileConfig cfg(L, mu, K, ActivationType::Int8);
            const auto y = as_int(gemv(w, ActivationVector::from_int8(x), cfg));
            ASSERT_EQ(y[0], want[0]);
            ASSERT_EQ(y[1], want[1]);
          }
        }
      }
    }
  }
  EXPECT_EQ(matrices, 81);
}

TEST(Gemv, Int8ResultIndependentOfConfig) {
  gen::Rng rng(55);
  const auto w = gen::matrix(rng, 37, 53);
  const auto x = ActivationVector::from_int8(gen::int8s(rng, 53));
  const auto base = as_int(gemv(w, x, TileConfig(1, 1, 1, ActivationType::Int8)));
  for (int L = 1; L <= 5; ++L) {
    for (int mu = 1; mu <= kMaxGroupSize; ++mu) {
      for (int K : {1, 3, 16, 64}) {
        EXPECT_EQ(as_int(gemv(w, x, TileConfig(L, mu, K, ActivationType::Int8))), base)
            << L << "," << mu << "," << K;
      }
    }
  }
}

TEST(Gemv, Int8ZeroColumnsDoNotChangeOutput) {
  gen::Rng rng(66);
  for (int i = 0; i < 50; ++i) {
    const auto M = static_cast<std::size_t>(gen::uniform(rng, 1, 20));
    const auto N = static_cast<std::size_t>(gen::uniform(rng, 1, 30));
    const auto w = gen::matrix(rng, M, N);
    const auto x = gen::int8s(rng, N);
    const auto cfg = gen::tile(rng, ActivationType::Int8, 5, 4, 8);
    const auto y = as_int(gemv(w, ActivationVector::from_int8(x), cfg));

    // Insert a zero column (with a zero activation) before every position
    // chosen by a coin flip.
    std::vector<std::size_t> source;  // original column or N for inserted zero
    for (std::size_t c = 0; c < N; ++c) {
      if (gen::uniform(rng, 0, 1) == 1) source.push_back(N);
      source.push_back(c);
    }
    std::vector<Trit> data;
    for (std::size_t r = 0; r < M; ++r) {
      for (auto c : source) data.push_back(c == N ? Trit::Zero : w.at(r, c));
    }
    std::vector<std::int8_t> x2;
    for (auto c : source) x2.push_back(c == N ? std::int8_t{0} : x[c]);
    const TernaryMatrix w2(M, source.size(), data);
    EXPECT_EQ(as_int(gemv(w2, ActivationVector::from_int8(x2), cfg)), y);
  }
}

TEST(Gemv, Fp16BitExactAgainstArchitectureOrderOracle) {
  gen::Rng rng(777);
  for (int i = 0; i < 200; ++i) {
    const auto M = static_cast<std::size_t>(gen::uniform(rng, 1, 64));
    const auto N = static_cast<std::size_t>(gen::uniform(rng, 1, 128));
    const auto cfg = gen::tile(rng, ActivationType::Fp16, 5, 8, 16);
    const auto w = gen::matrix(rng, M, N);
    const auto h = gen::halves(rng, N, gen::uniform(rng, 1, 30));
    const auto x = ActivationVector::from_fp16(h);
    const auto y = as_bits(gemv(w, x, cfg));
    const auto want = oracle::arch_order_fp16(w, bits_of(h), cfg.lut_count(), cfg.group_size(),
                                              cfg.fetchers_per_lut());
    ASSERT_EQ(y, want) << "instance " << i;
    ASSERT_EQ(y, as_bits(reference_gemv(w, x, cfg)));
  }
}

TEST(Gemv, Fp16OverflowSaturatesToInfinity) {
  const TernaryMatrix w(1, 4, std::vector<Trit>(4, Trit::Plus));
  const auto x = ActivationVector::from_fp16(std::vector<fp16::Half>(4, fp16::kMaxFinite));
  const auto y = as_bits(gemv(w, x, TileConfig(1, 2, 1, ActivationType::Fp16)));
  EXPECT_EQ(y[0], 0x7C00);
}

TEST(Gemv, Fp16AccuracyIsReportedAgainstFloat64) {
  gen::Rng rng(8);
  const auto w = gen::matrix(rng, 16, 64);
  const auto x = ActivationVector::from_fp16(gen::halves(rng, 64, 16));
  const auto y = gemv(w, x, TileConfig(4, 4, 4, ActivationType::Fp16));
  const auto exact = reference_gemv_f64(w, x);
  const auto report = accuracy(y, exact);
  EXPECT_GE(report.max_abs_error, 0.0);
  EXPECT_LE(report.mean_abs_error, report.max_abs_error);
  const auto ints = gemv(w, ActivationVector::from_int8(gen::int8s(rng, 64)), TileConfig(4, 4, 4, ActivationType::Int8));
  EXPECT_EQ(to_doubles(ints).size(), 16u);
}

TEST(Cycles, FormulaCases) {
  EXPECT_EQ(build_latency(1), 1);
  EXPECT_EQ(build_latency(2), 2);
  EXPECT_EQ(build_latency(3), 3);
  EXPECT_EQ(build_latency(4), 3);
  EXPECT_EQ(build_latency(5), 4);
  EXPECT_EQ(build_latency(8), 4);
  const TileConfig t(16, 4, 32, ActivationType::Int8);  // 64 x 32
  EXPECT_EQ(cycle_count(t, 32, 64, true), 1u + 3u);
  EXPECT_EQ(cycle_count(t, 64, 128, true), 4u + 3u);
  EXPECT_EQ(cycle_count(t, 64, 128, false), 4u + 2u * 3u);
  EXPECT_EQ(cycle_count(t, 65, 129, true), 3u * 3u + 3u);
}

}  // namespace
}  // namespace tlut::sim
