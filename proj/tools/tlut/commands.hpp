// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tlut::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

struct Common {
  std::uint64_t seed = 0;
  std::string coeffs;  // empty: <config dir>/coeffs-<act>.ini
  std::string act = "int8";
  bool exact = false;
};

struct EncodeOptions {
  Common common;
  std::string in, out;
  int mu = 5;
};
struct DecodeOptions {
  Common common;
  std::string in, out;
};
struct SimulateOptions {
  Common common;
  std::string weights, activations, out;
  bool binary = false;
  int L = 1, mu = 1, K = 1;
  bool check = false;
  bool no_overlap = false;
};
struct CyclesOptions {
  Common common;
  int L = 1, mu = 1, K = 1;
  std::uint64_t rows = 1, cols = 1;
  bool no_overlap = false;
};
struct CostOptions {
  Common common;
  std::optional<int> L;
  std::optional<std::int64_t> n;
  std::int64_t m = 0;  // K when L is given
  std::string mu = "1-5";
  std::string out;
};
struct BaselineOptions {
  Common common;
  std::int64_t n = 32, m = 32;
  std::string out;
};
struct DseOptions {
  Common common;
  std::string spec, out;
  bool act_given = false;
  std::string mu = "1-5";
  std::string sizes, L, K;
  bool square = false, integral = false, pareto = false;
  std::optional<std::int64_t> throughput;
  double tolerance = 0.02;
  bool optimal = false;
};
struct GeometryOptions {
  Common common;
  std::int64_t size = 1024;
  double tolerance = 0.02;
  std::string out;
};
struct CompareOptions {
  Common common;
  std::string sota, out;
  double tolerance = 0.02;
  bool square = false;
};
struct EfficiencyOptions {
  Common common;
  std::string sizes = "8,32,64,96";
  std::string out;
};
struct NetlistOptions {
  Common common;
  int L = 1, mu = 1, K = 1;
  std::string out;
};
struct CalibrateOptions {
  Common common;
  std::string points, out;
};
struct GenMatrixOptions {
  Common common;
  std::size_t rows = 16, cols = 16;
  double zero_fraction = 1.0 / 3.0;
  std::string out;
};
struct GenActivationsOptions {
  Common common;
  std::size_t size = 16;
  bool binary = false;
  double scale = 1.0;
  std::string out;
};

int run_encode(const EncodeOptions& o);
int run_decode(const DecodeOptions& o);
int run_simulate(const SimulateOptions& o);
int run_cycles(const CyclesOptions& o);
int run_cost(const CostOptions& o);
int run_baseline(const BaselineOptions& o);
int run_dse(const DseOptions& o);
int run_geometry(const GeometryOptions& o);
int run_compare(const CompareOptions& o);
int run_efficiency(const EfficiencyOptions& o);
int run_netlist(const NetlistOptions& o);
int run_calibrate(const CalibrateOptions& o);
int run_gen_matrix(const GenMatrixOptions& o);
int run_gen_activations(const GenActivationsOptions& o);

}  // namespace tlut::cli
