// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "tlut/errors.hpp"
#include "tlut/types.hpp"

namespace tlut {
namespace {

TEST(Trit, FromIntAcceptsOnlyTernaryValues) {
  EXPECT_EQ(trit_from_int(-1), Trit::Minus);
  EXPECT_EQ(trit_from_int(0), Trit::Zero);
  EXPECT_EQ(trit_from_int(1), Trit::Plus);
  EXPECT_THROW(trit_from_int(2), InvalidArgument);
  EXPECT_THROW(trit_from_int(-2), InvalidArgument);
  EXPECT_EQ(negate(Trit::Minus), Trit::Plus);
  EXPECT_EQ(negate(Trit::Zero), Trit::Zero);
}

TEST(TableSize, PositiveHalfOfAllGroups) {
  EXPECT_EQ(lut_table_size(1), 1);
  EXPECT_EQ(lut_table_size(2), 4);
  EXPECT_EQ(lut_table_size(3), 13);
  EXPECT_EQ(lut_table_size(4), 40);
  EXPECT_EQ(lut_table_size(5), 121);
  EXPECT_EQ(lut_table_size(8), 3280);
}

TEST(TernaryMatrix, ShapeAndAccess) {
  TernaryMatrix w(2, 3, {Trit::Plus, Trit::Minus, Trit::Zero, Trit::Minus, Trit::Plus, Trit::Minus});
  EXPECT_EQ(w.rows(), 2u);
  EXPECT_EQ(w.cols(), 3u);
  EXPECT_EQ(w.at(1, 2), Trit::Minus);
  EXPECT_EQ(w.row(0)[1], Trit::Minus);
  EXPECT_THROW(w.at(2, 0), InvalidArgument);
  EXPECT_THROW(TernaryMatrix(2, 2, {Trit::Plus}), InvalidArgument);
  EXPECT_EQ(TernaryMatrix(3, 4).at(2, 3), Trit::Zero);
}

TEST(ActivationType, ParseIsCaseInsensitive) {
  EXPECT_EQ(parse_activation_type("INT8"), ActivationType::Int8);
  EXPECT_EQ(parse_activation_type("fp16"), ActivationType::Fp16);
  EXPECT_THROW(parse_activation_type("bf16"), InvalidArgument);
  EXPECT_EQ(word_bits(ActivationType::Fp16), 16);
}

TEST(TileConfig, Validation) {
  EXPECT_THROW(TileConfig(0, 1, 1, ActivationType::Int8), InvalidArgument);
  EXPECT_THROW(TileConfig(1, 0, 1, ActivationType::Int8), InvalidArgument);
  EXPECT_THROW(TileConfig(1, 9, 1, ActivationType::Int8), InvalidArgument);
  EXPECT_THROW(TileConfig(1, 1, 0, ActivationType::Int8), InvalidArgument);
  EXPECT_THROW(TileConfig(1, 5, 1, ActivationType::Int8, 4), InvalidArgument);
  EXPECT_NO_THROW(TileConfig(1, 8, 1, ActivationType::Int8));
}

TEST(TileDims, PublishedShapes) {
  const TileConfig tenet(32, 2, 32, ActivationType::Int8);
  EXPECT_EQ(tile_dims(tenet), (TileDims{64, 32}));
  EXPECT_EQ(tenet.tile_size(), 2048);
  const TileConfig tellme(28, 3, 16, ActivationType::Int8);
  EXPECT_EQ(tile_dims(tellme), (TileDims{84, 16}));
  EXPECT_EQ(tellme.tile_size(), 1344);
  EXPECT_EQ(tile_dims(TileConfig(1, 1, 1, ActivationType::Fp16)), (TileDims{1, 1}));
}

TEST(TileDims, ProductPropertyOnRandomConfigs) {
  gen::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto cfg = gen::tile(rng, ActivationType::Int8, 8, 64, 64);
    const auto d = tile_dims(cfg);
    EXPECT_GT(d.n, 0);
    EXPECT_GT(d.m, 0);
    EXPECT_EQ(d.n * d.m, std::int64_t{cfg.lut_count()} * cfg.group_size() * cfg.fetchers_per_lut());
  }
}

TEST(PeakThroughput, ClockTimesTileSize) {
  EXPECT_DOUBLE_EQ(peak_throughput(TileConfig(32, 2, 32, ActivationType::Int8), 500e6), 1.024e12);
  EXPECT_DOUBLE_EQ(peak_throughput(TileConfig(1, 1, 1, ActivationType::Int8), 1.0), 1.0);
  EXPECT_DOUBLE_EQ(peak_throughput(TileConfig(28, 3, 16, ActivationType::Int8), 500e6), 6.72e11);
  EXPECT_THROW(peak_throughput(TileConfig(1, 1, 1, ActivationType::Int8), 0.0), InvalidArgument);
}

TEST(ActivationVector, RejectsNonFiniteHalves) {
  EXPECT_THROW(ActivationVector::from_fp16({fp16::kPositiveInfinity}), InvalidArgument);
  EXPECT_THROW(ActivationVector::from_fp16({fp16::kCanonicalNaN}), InvalidArgument);
  const auto x = ActivationVector::from_fp16({fp16::kMaxFinite, fp16::kNegativeZero});
  EXPECT_EQ(x.size(), 2u);
  EXPECT_EQ(x.activation(), ActivationType::Fp16);
  EXPECT_THROW(x.int8_values(), InvalidArgument);
  const auto y = ActivationVector::from_int8({-128, 127});
  EXPECT_EQ(y.int8_values()[0], -128);
  EXPECT_THROW(y.fp16_values(), InvalidArgument);
}

}  // namespace
}  // namespace tlut
