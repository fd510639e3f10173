// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "tlut/adder_dag.hpp"
#include "tlut/cost_model.hpp"
#include "tlut/errors.hpp"

namespace tlut::cost {
namespace {

const std::string kConfig = TLUT_CONFIG_DIR;

CostCoefficients ones(ActivationType act = ActivationType::Int8) { return {act, 1, 1, 1, 1, 1, 1}; }

CostCoefficients random_coeffs(gen::Rng& rng, ActivationType act) {
  std::uniform_real_distribution<double> d(0.01, 20.0);
  return {act, d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)};
}

TEST(Coefficients, ShippedFilesLoad) {
  const auto i8 = load_coefficients(kConfig + "/coeffs-int8.ini");
  EXPECT_EQ(i8.act, ActivationType::Int8);
  EXPECT_DOUBLE_EQ(i8.gamma, 0.55);
  EXPECT_DOUBLE_EQ(i8.a_add, 1.0);
  const auto f16 = load_coefficients(kConfig + "/coeffs-fp16.ini", ActivationType::Fp16);
  EXPECT_DOUBLE_EQ(f16.gamma, 1.5);
  // Regimes: INT8 adder comparable to the read-out, FP16 adder far larger and
  // a nearly free negation.
  EXPECT_LT(i8.a_add / (i8.a_mux + i8.a_inv), 4.0);
  EXPECT_GT(f16.a_add / (f16.a_mux + f16.a_inv), 20.0);
  EXPECT_LT(f16.a_inv, 0.05 * f16.a_mux + 0.05);
}

TEST(Coefficients, ParseErrors) {
  EXPECT_THROW(parse_coefficients("a_add = 1\n"), ConfigError);
  EXPECT_THROW(parse_coefficients("[int8]\na_add = 1\n"), ConfigError);
  EXPECT_THROW(parse_coefficients("[int4]\na_add=1\na_mux=1\na_inv=1\na_reg=1\na_mul=1\ngamma=1\n"), ConfigError);
  EXPECT_THROW(parse_coefficients("[int8]\na_add=x\na_mux=1\na_inv=1\na_reg=1\na_mul=1\ngamma=1\n"), ConfigError);
  EXPECT_THROW(parse_coefficients("[int8]\na_add=-1\na_mux=1\na_inv=1\na_reg=1\na_mul=1\ngamma=1\n"), ConfigError);
  EXPECT_THROW(parse_coefficients("[int8\n"), ConfigError);
  EXPECT_THROW(parse_coefficients("[int8]\na_add=1\na_mux=1\na_inv=1\na_reg=1\na_mul=1\ngamma=1\n",
                                  ActivationType::Fp16),
               ConfigError);
  EXPECT_THROW(load_coefficients("/nonexistent/coeffs.ini"), ConfigError);
}

TEST(Coefficients, FormatRoundTrips) {
  const CostCoefficients c{ActivationType::Fp16, 8.25, 0.2, 0.01, 2.75, 3.0, 1.5};
  const auto back = parse_coefficients(format_coefficients(c), ActivationType::Fp16);
  EXPECT_EQ(back.a_add, c.a_add);
  EXPECT_EQ(back.a_mux, c.a_mux);
  EXPECT_EQ(back.a_inv, c.a_inv);
  EXPECT_EQ(back.a_reg, c.a_reg);
  EXPECT_EQ(back.a_mul, c.a_mul);
  EXPECT_EQ(back.gamma, c.gamma);
}

TEST(BuildCost, FittedAndExact) {
  const auto s = make_shape(64, 64, 4, ActivationType::Int8);
  EXPECT_NEAR(build_cost(s, BuildMode::Fitted), std::pow(3.069, 4) / 1.938 * 16, 1e-9);
  EXPECT_NEAR(build_cost(s, BuildMode::Fitted), 732.41, 0.005);
  EXPECT_LT(std::abs(build_cost(s, BuildMode::Fitted) - 732.6) / 732.6, 5e-4);
  EXPECT_DOUBLE_EQ(build_cost(s, BuildMode::Exact), 576.0);
  const double per_lut = std::pow(3.069, 4) / 1.938;
  EXPECT_NEAR(per_lut, 45.8, 0.05);
  EXPECT_LT(std::abs(per_lut - dag::adder_bound(4)) / dag::adder_bound(4), 0.05);
  EXPECT_DOUBLE_EQ(build_cost(make_shape(8, 8, 1, ActivationType::Int8), BuildMode::Exact), 0.0);
}

TEST(TermCosts, Examples) {
  EXPECT_DOUBLE_EQ(accumulate_cost(make_shape(64, 32, 2, ActivationType::Int8)), 1024);
  EXPECT_DOUBLE_EQ(accumulate_cost(make_shape(1, 1, 1, ActivationType::Int8)), 1);
  EXPECT_DOUBLE_EQ(mux_cost(make_shape(64, 32, 2, ActivationType::Int8)), 4096);
  EXPECT_DOUBLE_EQ(mux_cost(make_shape(84, 16, 3, ActivationType::Int8)), 5824);
  EXPECT_DOUBLE_EQ(mux_cost(make_shape(10, 7, 1, ActivationType::Int8)), 70);
  EXPECT_DOUBLE_EQ(outreg_cost(make_shape(10, 7, 1, ActivationType::Int8)), 7);
}

TEST(TermCosts, AccumulateEqualsResourceCount) {
  gen::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto cfg = gen::tile(rng, ActivationType::Int8, 8, 64, 64);
    EXPECT_DOUBLE_EQ(accumulate_cost(shape_of(cfg)),
                     static_cast<double>(dag::resource_counts(cfg).accumulate_adders));
  }
}

TEST(TotalArea, UnitCoefficientsOnUnitTile) {
  const auto b = total_area(make_shape(1, 1, 1, ActivationType::Int8), ones(), BuildMode::Exact);
  EXPECT_DOUBLE_EQ(b.total, 4.0);
  EXPECT_DOUBLE_EQ(b.build_plus, 0.0);
  EXPECT_DOUBLE_EQ(b.accumulate_plus, 1.0);
  EXPECT_DOUBLE_EQ(b.mux, 2.0);
  EXPECT_DOUBLE_EQ(b.out_reg, 1.0);
  auto c = ones();
  c.gamma = 0.55;
  EXPECT_DOUBLE_EQ(total_area(make_shape(1, 1, 1, ActivationType::Int8), c, BuildMode::Exact).total, 4 * 0.55);
  EXPECT_THROW(total_area(make_shape(1, 1, 1, ActivationType::Fp16), ones(), BuildMode::Exact), InvalidArgument);
}

TEST(TotalArea, ModesDifferOnlyInBuildTerm) {
  gen::Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_coeffs(rng, ActivationType::Fp16);
    const auto s = shape_of(gen::tile(rng, ActivationType::Fp16, 8, 32, 32));
    const auto f = total_area(s, c, BuildMode::Fitted);
    const auto e = total_area(s, c, BuildMode::Exact);
    EXPECT_EQ(f.accumulate_plus, e.accumulate_plus);
    EXPECT_EQ(f.mux, e.mux);
    EXPECT_EQ(f.out_reg, e.out_reg);
    EXPECT_NEAR(f.total - e.total, c.gamma * (f.build_plus - e.build_plus), 1e-9 * f.total);
  }
}

TEST(TotalArea, LinearInCoefficients) {
  gen::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    auto c = random_coeffs(rng, ActivationType::Int8);
    const auto s = shape_of(gen::tile(rng, ActivationType::Int8, 8, 32, 32));
    const double base = total_area(s, c, BuildMode::Fitted).total;
    auto twice = c;
    twice.a_add *= 2;
    twice.a_mux *= 2;
    twice.a_inv *= 2;
    twice.a_reg *= 2;
    EXPECT_NEAR(total_area(s, twice, BuildMode::Fitted).total, 2 * base, 1e-9 * base);
    auto g = c;
    g.gamma *= 3;
    EXPECT_NEAR(total_area(s, g, BuildMode::Fitted).total, 3 * base, 1e-9 * base);
    // Each coefficient enters linearly: A(c + d e_k) - A(c) is linear in d.
    auto one = c;
    one.a_reg += 1.0;
    auto two = c;
    two.a_reg += 2.0;
    const double d1 = total_area(s, one, BuildMode::Fitted).total - base;
    const double d2 = total_area(s, two, BuildMode::Fitted).total - base;
    EXPECT_NEAR(d2, 2 * d1, 1e-9 * base);
  }
}

TEST(TotalArea, AccumulateFallsAndAreaEventuallyRisesWithMu) {
  gen::Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_coeffs(rng, ActivationType::Fp16);
    const std::int64_t n = gen::uniform(rng, 8, 256);
    const std::int64_t m = gen::uniform(rng, 1, 256);
    for (int mu = 1; mu < kMaxGroupSize; ++mu) {
      EXPECT_GT(total_area(make_shape(n, m, mu, c.act), c, BuildMode::Fitted).accumulate_plus,
                total_area(make_shape(n, m, mu + 1, c.act), c, BuildMode::Fitted).accumulate_plus);
    }
  }
  // The exponential terms dominate past the optimum.
  const auto c = load_coefficients(kConfig + "/coeffs-fp16.ini");
  double prev = 0;
  for (int mu = 3; mu <= kMaxGroupSize; ++mu) {
    const double a = total_area(make_shape(32, 32, mu, c.act), c, BuildMode::Fitted).total;
    EXPECT_GT(a, prev);
    prev = a;
  }
}

TEST(AreaPerThroughput, MatchesTotalAreaOverTileSize) {
  gen::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_coeffs(rng, i % 2 ? ActivationType::Int8 : ActivationType::Fp16);
    const auto s = make_shape(gen::uniform(rng, 1, 512), gen::uniform(rng, 1, 512), gen::uniform(rng, 1, 8), c.act);
    const double apt = area_per_throughput(s, c);
    const double ref = total_area(s, c, BuildMode::Fitted).total / static_cast<double>(s.throughput());
    EXPECT_LT(std::abs(apt - ref) / ref, 1e-9);
  }
}

TEST(AreaPerThroughput, DecreasingTowardsLimit) {
  gen::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto c = random_coeffs(rng, ActivationType::Int8);
    const int mu = gen::uniform(rng, 1, 8);
    const double limit = area_per_throughput_limit(mu, c);
    double prev_n = INFINITY, prev_m = INFINITY;
    for (std::int64_t size = 1; size <= 1 << 20; size *= 4) {
      const double by_n = area_per_throughput(make_shape(size, 64, mu, c.act), c);
      const double by_m = area_per_throughput(make_shape(64, size, mu, c.act), c);
      EXPECT_LT(by_n, prev_n);
      EXPECT_LT(by_m, prev_m);
      EXPECT_GT(area_per_throughput(make_shape(size, size, mu, c.act), c), limit);
      prev_n = by_n;
      prev_m = by_m;
    }
    const double big = area_per_throughput(make_shape(1LL << 40, 1LL << 40, mu, c.act), c);
    EXPECT_NEAR(big, limit, 1e-9 * limit);
    EXPECT_DOUBLE_EQ(limit, c.gamma * (c.a_add / mu + (c.a_mux + c.a_inv) * (std::pow(3.0, mu) - 1) / (2.0 * mu)));
  }
}

TEST(Baselines, Formulas) {
  const CostCoefficients c{ActivationType::Int8, 2, 0.5, 0.25, 3, 5, 1.5};
  EXPECT_DOUBLE_EQ(baseline_area(BaselineKind::FullMultiply, 4, 3, c), 1.5 * (12 * (5 + 2) + 3 * 3));
  EXPECT_DOUBLE_EQ(baseline_area(BaselineKind::SignFlip, 4, 3, c), 1.5 * (12 * (1 + 0.25 + 2) + 3 * 3));
  auto d = c;
  d.a_mul = 1e-300;
  d.a_mux = 1e-300;
  d.a_inv = 0;
  EXPECT_NEAR(baseline_area(BaselineKind::FullMultiply, 4, 3, d), baseline_area(BaselineKind::SignFlip, 4, 3, d),
              1e-9);
  EXPECT_EQ(parse_baseline_kind("sign_flip"), BaselineKind::SignFlip);
  EXPECT_THROW(parse_baseline_kind("booth"), InvalidArgument);
  EXPECT_THROW(baseline_area(BaselineKind::SignFlip, 0, 3, c), InvalidArgument);
}

TEST(Baselines, SignFlipIsTheSingleInputLutCore) {
  // The mu = 1 core pays one (a_mux + a_inv) per PE; the sign-flip PE pays
  // two muxes and an inverter. They differ by exactly n m a_mux.
  gen::Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto c = random_coeffs(rng, ActivationType::Fp16);
    const std::int64_t n = gen::uniform(rng, 1, 128), m = gen::uniform(rng, 1, 128);
    const double lut = total_area(make_shape(n, m, 1, c.act), c, BuildMode::Exact).total;
    const double sf = baseline_area(BaselineKind::SignFlip, n, m, c);
    EXPECT_NEAR(sf - lut, c.gamma * static_cast<double>(n * m) * c.a_mux, 1e-9 * sf);
  }
}

TEST(Baselines, OrderingWithShippedFp16Coefficients) {
  const auto c = load_coefficients(kConfig + "/coeffs-fp16.ini");
  double best = INFINITY;
  for (int mu = 1; mu <= 5; ++mu) best = std::min(best, total_area(make_shape(32, 32, mu, c.act), c).total);
  const double full = baseline_area(BaselineKind::FullMultiply, 32, 32, c);
  const double sf = baseline_area(BaselineKind::SignFlip, 32, 32, c);
  EXPECT_GT(full, sf);
  EXPECT_GT(sf, best);
}

TEST(Calibration, RoundTripsSyntheticGamma) {
  gen::Rng rng(10);
  for (auto act : {ActivationType::Int8, ActivationType::Fp16}) {
    auto c = random_coeffs(rng, act);
    std::vector<CalibrationPoint> pts;
    for (int i = 0; i < 20; ++i) {
      const auto s = shape_of(gen::tile(rng, act, 5, 32, 32));
      pts.push_back({s, 0.55 * total_area(s, c, BuildMode::Fitted).pre_gamma_sum()});
    }
    EXPECT_NEAR(calibrate_gamma(pts, c, BuildMode::Fitted), 0.55, 1e-12);
    for (auto& p : pts) p.measured_area = total_area(p.shape, c, BuildMode::Exact).pre_gamma_sum();
    EXPECT_NEAR(calibrate_gamma(pts, c, BuildMode::Exact), 1.0, 1e-12);
    const std::vector<CalibrationPoint> one = {{make_shape(16, 16, 2, act), 1234.5}};
    EXPECT_DOUBLE_EQ(calibrate_gamma(one, c, BuildMode::Fitted),
                     1234.5 / total_area(one[0].shape, c, BuildMode::Fitted).pre_gamma_sum());
  }
  EXPECT_THROW(calibrate_gamma({}, ones(), BuildMode::Fitted), InvalidArgument);
}

TEST(Shapes, Validation) {
  EXPECT_THROW(make_shape(0, 1, 1, ActivationType::Int8), InvalidArgument);
  EXPECT_THROW(make_shape(1, 1, 9, ActivationType::Int8), InvalidArgument);
  const auto s = make_shape(32, 32, 3, ActivationType::Fp16);
  EXPECT_FALSE(s.integral());
  EXPECT_NEAR(s.lut_count(), 32.0 / 3.0, 1e-12);
  EXPECT_TRUE(make_shape(33, 32, 3, ActivationType::Fp16).integral());
}

}  // namespace
}  // namespace tlut::cost
