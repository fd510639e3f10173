// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "tlut/cost_model.hpp"
#include "tlut/dse.hpp"
#include "tlut/encoder.hpp"
#include "tlut/lut_engine.hpp"

namespace {

using namespace tlut;

TernaryMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-1, 1);
  std::vector<Trit> data(rows * cols);
  for (auto& t : data) t = trit_from_int(d(rng));
  return TernaryMatrix(rows, cols, std::move(data));
}

ActivationVector random_activations(std::size_t n, ActivationType act, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (act == ActivationType::Int8) {
    std::uniform_int_distribution<int> d(-128, 127);
    std::vector<std::int8_t> v(n);
    for (auto& e : v) e = static_cast<std::int8_t>(d(rng));
    return ActivationVector::from_int8(std::move(v));
  }
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<fp16::Half> v(n);
  for (auto& e : v) e = fp16::from_double(d(rng));
  return ActivationVector::from_fp16(std::move(v));
}

// args: size, mu, act (0 int8, 1 fp16)
void BM_Gemv(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const int mu = static_cast<int>(state.range(1));
  const auto act = state.range(2) ? ActivationType::Fp16 : ActivationType::Int8;
  const auto w = random_matrix(size, size, 1);
  const auto x = random_activations(size, act, 2);
  const TileConfig cfg(32 / mu + 1, mu, 32, act);
  for (auto _ : state) benchmark::DoNotOptimize(sim::gemv(w, x, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size * size));
}
BENCHMARK(BM_Gemv)->ArgsProduct({{256, 1024}, {1, 3, 5}, {0, 1}});

void BM_BuildLut(benchmark::State& state) {
  const int mu = static_cast<int>(state.range(0));
  const auto x = random_activations(static_cast<std::size_t>(mu), ActivationType::Fp16, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sim::build_lut<Fp16Arith>(x.fp16_values()));
}
BENCHMARK(BM_BuildLut)->DenseRange(1, 8);

void BM_EncodeMatrix(benchmark::State& state) {
  const auto w = random_matrix(1024, 1024, 4);
  const int mu = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enc::serialize(enc::encode_matrix(w, mu)));
  state.SetItemsProcessed(state.iterations() * 1024 * 1024);
}
BENCHMARK(BM_EncodeMatrix)->DenseRange(1, 5);

void BM_FullSweep(benchmark::State& state) {
  dse::SweepSpec spec;
  spec.coeffs = cost::CostCoefficients{ActivationType::Fp16, 8.0, 0.2, 0.01, 2.75, 3.0, 1.5};
  spec.mu = {1, 5};
  for (std::int64_t s = 1; s <= 128; ++s) spec.square_sizes.push_back(s);
  spec.integral_only = true;
  for (auto _ : state) benchmark::DoNotOptimize(dse::sweep(spec));
}
BENCHMARK(BM_FullSweep);

void BM_OptimalForThroughput(benchmark::State& state) {
  const cost::CostCoefficients c{ActivationType::Int8, 1.0, 0.1, 0.35, 5.5, 4.0, 0.55};
  for (auto _ : state) benchmark::DoNotOptimize(dse::optimal_for_throughput(state.range(0), c));
}
BENCHMARK(BM_OptimalForThroughput)->Arg(1024)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
