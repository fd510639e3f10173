// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "manifest.hpp"
#include "tlut/adder_dag.hpp"
#include "tlut/cost_model.hpp"
#include "tlut/dse.hpp"
#include "tlut/encoder.hpp"
#include "tlut/errors.hpp"
#include "tlut/lut_engine.hpp"
#include "tlut/matrix_io.hpp"
#include "tlut/netlist.hpp"

namespace tlut::cli {

namespace {

namespace fs = std::filesystem;

fs::path config_dir() {
  if (const char* env = std::getenv("TLUT_CONFIG_DIR"); env != nullptr && *env != '\0') return env;
  return TLUT_DEFAULT_CONFIG_DIR;
}

fs::path coeff_path(const Common& c, ActivationType act) {
  if (!c.coeffs.empty()) return c.coeffs;
  return config_dir() / fmt::format("coeffs-{}.ini", tlut::to_string(act));
}

cost::BuildMode build_mode(const Common& c) { return c.exact ? cost::BuildMode::Exact : cost::BuildMode::Fitted; }

RunManifest start_manifest(const std::string& command, const Common& c) {
  RunManifest m;
  m.command = command;
  m.params["seed"] = c.seed;
  m.params["act"] = c.act;
  m.params["exact"] = c.exact;
  return m;
}

cost::CostCoefficients load_coeffs(const Common& c, ActivationType act, RunManifest& manifest) {
  const auto path = coeff_path(c, act);
  auto coeffs = cost::load_coefficients(path, act);
  manifest.add_digest(path);
  return coeffs;
}

/// Writes text to `out` with its manifest, or to stdout when out is empty.
void emit(const std::string& text, const std::string& out, const RunManifest& manifest) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  io::write_file_text(out, text);
  manifest.write_for(out);
}

/// Summary lines go to stdout unless stdout already carries the main output.
std::ostream& report_stream(const std::string& out) { return out.empty() ? std::cerr : std::cout; }

std::string format_lut_count(const cost::TileShape& s) {
  if (s.integral()) return std::to_string(s.n / s.group_size);
  return io::format_double(s.lut_count());
}

std::vector<int> parse_mu_values(const std::string& text) {
  std::vector<int> values;
  if (text.find(',') != std::string::npos) {
    for (auto v : dse::parse_int_list(text)) values.push_back(static_cast<int>(v));
  } else {
    const auto r = dse::parse_int_range(text);
    for (int mu = r.lo; mu <= r.hi; ++mu) values.push_back(mu);
  }
  return values;
}

TernaryMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return io::read_matrix_text(in);
}

}  // namespace

int run_encode(const EncodeOptions& o) {
  auto manifest = start_manifest("encode", o.common);
  manifest.params["in"] = o.in;
  manifest.params["mu"] = o.mu;
  manifest.add_digest(o.in);
  const auto weights = load_matrix(o.in);
  const auto stream = enc::encode_matrix(weights, o.mu);
  const auto bytes = enc::serialize(stream);
  io::write_file_bytes(o.out, bytes);
  manifest.write_for(o.out);
  fmt::print("rows,cols,mu,key_bits,payload_bytes,bits_per_weight,stored_bits_per_weight\n"
             "{},{},{},{},{},{:.3f},{:.3f}\n",
             stream.rows, stream.cols, stream.group_size, enc::key_width(stream.group_size), stream.payload.size(),
             enc::nominal_bits_per_weight(stream.group_size), stream.bits_per_weight());
  return kOk;
}

int run_decode(const DecodeOptions& o) {
  auto manifest = start_manifest("decode", o.common);
  manifest.params["in"] = o.in;
  manifest.add_digest(o.in);
  const auto stream = enc::parse_stream(io::read_file_bytes(o.in));
  std::ostringstream text;
  io::write_matrix_text(text, enc::decode_matrix(stream));
  emit(text.str(), o.out, manifest);
  return kOk;
}

int run_simulate(const SimulateOptions& o) {
  auto manifest = start_manifest("simulate", o.common);
  manifest.params["weights"] = o.weights;
  manifest.params["activations"] = o.activations;
  manifest.params["binary"] = o.binary;
  manifest.params["L"] = o.L;
  manifest.params["mu"] = o.mu;
  manifest.params["K"] = o.K;
  manifest.params["check"] = o.check;
  manifest.params["overlap"] = !o.no_overlap;
  manifest.add_digest(o.weights);
  manifest.add_digest(o.activations);

  const ActivationType act = parse_activation_type(o.common.act);
  const TileConfig cfg(o.L, o.mu, o.K, act);
  const auto weights = load_matrix(o.weights);
  ActivationVector x = [&] {
    if (o.binary) return io::parse_activations_binary(io::read_file_bytes(o.activations), act);
    std::ifstream in(o.activations);
    if (!in) throw ConfigError("cannot open '" + o.activations + "'");
    return io::read_activations_csv(in, act);
  }();

  const auto y = sim::gemv(weights, x, cfg);
  std::ostringstream csv;
  io::write_outputs_csv(csv, y);
  emit(csv.str(), o.out, manifest);

  const auto cycles = sim::cycle_count(cfg, weights.rows(), weights.cols(), !o.no_overlap);
  std::string status = "skipped";
  std::string errors = ",,";
  int code = kOk;
  if (o.check) {
    const auto ref = sim::reference_gemv(weights, x, cfg);
    if (y == ref) {
      status = act == ActivationType::Int8 ? "exact" : "bit-exact";
    } else {
      status = "MISMATCH";
      code = kVerificationFailed;
    }
    const auto exact = sim::reference_gemv_f64(weights, x);
    const auto acc = sim::accuracy(y, exact);
    errors = fmt::format("{},{},{}", io::format_double(acc.max_abs_error), io::format_double(acc.max_rel_error),
                         io::format_double(acc.mean_abs_error));
  }
  fmt::print(report_stream(o.out), "rows,cols,L,mu,K,act,cycles,check,max_abs_error,max_rel_error,mean_abs_error\n");
  fmt::print(report_stream(o.out), "{},{},{},{},{},{},{},{},{}\n", weights.rows(), weights.cols(), o.L, o.mu, o.K,
             tlut::to_string(act), cycles, status, errors);
  if (code != kOk) fmt::print(stderr, "error: simulator output differs from the reference oracle\n");
  return code;
}

int run_cycles(const CyclesOptions& o) {
  const TileConfig cfg(o.L, o.mu, o.K, parse_activation_type(o.common.act));
  fmt::print("rows,cols,n,m,mu,overlap,build_latency,cycles\n{},{},{},{},{},{},{},{}\n", o.rows, o.cols, cfg.n(),
             cfg.m(), o.mu, o.no_overlap ? 0 : 1, sim::build_latency(o.mu),
             sim::cycle_count(cfg, o.rows, o.cols, !o.no_overlap));
  return kOk;
}

int run_cost(const CostOptions& o) {
  if (o.L.has_value() == o.n.has_value()) throw InvalidArgument("give exactly one of --L and --n");
  auto manifest = start_manifest("cost", o.common);
  manifest.params["mu"] = o.mu;
  manifest.params["m"] = o.m;
  if (o.L) manifest.params["L"] = *o.L;
  if (o.n) manifest.params["n"] = *o.n;
  const ActivationType act = parse_activation_type(o.common.act);
  const auto coeffs = load_coeffs(o.common, act, manifest);
  const auto mode = build_mode(o.common);

  std::ostringstream csv;
  csv << "act,mode,mu,L,K,n,m,build_area,accumulate_area,mux_area,reg_area,gamma,total_area,"
         "total_area_fac_inverters,area_per_throughput\n";
  for (int mu : parse_mu_values(o.mu)) {
    const std::int64_t n = o.L ? std::int64_t{*o.L} * mu : *o.n;
    const auto shape = cost::make_shape(n, o.m, mu, act);
    const auto b = cost::total_area(shape, coeffs, mode);
    const double per_tp = mode == cost::BuildMode::Fitted
                              ? cost::area_per_throughput(shape, coeffs)
                              : b.total / static_cast<double>(shape.throughput());
    fmt::print(csv, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", tlut::to_string(act), cost::to_string(mode),
               mu, format_lut_count(shape), o.m, n, o.m, io::format_double(b.gamma * b.build_plus),
               io::format_double(b.gamma * b.accumulate_plus), io::format_double(b.gamma * b.mux),
               io::format_double(b.gamma * b.out_reg), io::format_double(b.gamma), io::format_double(b.total),
               io::format_double(cost::total_area_per_fac_inverters(shape, coeffs, mode)),
               io::format_double(per_tp));
  }
  emit(csv.str(), o.out, manifest);
  return kOk;
}

int run_baseline(const BaselineOptions& o) {
  auto manifest = start_manifest("baseline", o.common);
  manifest.params["n"] = o.n;
  manifest.params["m"] = o.m;
  const ActivationType act = parse_activation_type(o.common.act);
  const auto coeffs = load_coeffs(o.common, act, manifest);
  const auto mode = build_mode(o.common);
  const int mu = dse::optimal_mu(o.n, o.m, coeffs, dse::MuSearch{mode});
  const double lut = cost::total_area(cost::make_shape(o.n, o.m, mu, act), coeffs, mode).total;

  std::ostringstream csv;
  csv << "design,mu,total_area,relative_cost\n";
  for (auto kind : {cost::BaselineKind::FullMultiply, cost::BaselineKind::SignFlip}) {
    const double area = cost::baseline_area(kind, o.n, o.m, coeffs);
    fmt::print(csv, "{},,{},{}\n", cost::to_string(kind), io::format_double(area), io::format_double(area / lut));
  }
  fmt::print(csv, "lut,{},{},1\n", mu, io::format_double(lut));
  emit(csv.str(), o.out, manifest);
  return kOk;
}

int run_dse(const DseOptions& o) {
  auto manifest = start_manifest("dse", o.common);
  const std::optional<ActivationType> act_override =
      o.act_given ? std::optional(parse_activation_type(o.common.act)) : std::nullopt;
  dse::SweepSpec spec;
  if (!o.spec.empty()) {
    manifest.params["spec"] = o.spec;
    manifest.add_digest(o.spec);
    spec = dse::load_sweep_spec(o.spec, act_override);
    if (!o.common.coeffs.empty()) spec.coeffs = load_coeffs(o.common, spec.coeffs.act, manifest);
    if (o.common.exact) spec.mode = cost::BuildMode::Exact;
  } else {
    const ActivationType act = parse_activation_type(o.common.act);
    spec.coeffs = load_coeffs(o.common, act, manifest);
    spec.mode = build_mode(o.common);
    spec.mu = dse::parse_int_range(o.mu);
    if (!o.sizes.empty()) spec.square_sizes = dse::parse_int_list(o.sizes);
    if (!o.L.empty()) spec.lut_count = dse::parse_int_range(o.L);
    if (!o.K.empty()) spec.fetchers = dse::parse_int_range(o.K);
    if (o.sizes.empty() && (o.L.empty() || (o.K.empty() && !o.square))) {
      throw InvalidArgument("give --spec, --sizes, or --L with --K (or --square)");
    }
    spec.square_only = o.square;
    spec.integral_only = o.integral;
    if (o.throughput) spec.throughput = dse::ThroughputTarget{*o.throughput, o.tolerance};
    // --square without --K bounds m only through n.
    if (o.square && o.K.empty()) spec.fetchers = {1, spec.lut_count.hi * spec.mu.hi};
    manifest.params["mu"] = o.mu;
    manifest.params["sizes"] = o.sizes;
    manifest.params["L"] = o.L;
    manifest.params["K"] = o.K;
    manifest.params["square"] = o.square;
    manifest.params["integral"] = o.integral;
    if (o.throughput) manifest.params["throughput"] = *o.throughput;
    manifest.params["tolerance"] = o.tolerance;
  }
  manifest.params["pareto"] = o.pareto;
  manifest.params["optimal"] = o.optimal;

  std::vector<dse::DesignPoint> points;
  if (o.optimal) {
    if (!o.throughput) throw InvalidArgument("--optimal needs --throughput");
    dse::ThroughputSearch search;
    search.rectangular = !o.square;
    search.tolerance = o.tolerance;
    search.mode = spec.mode;
    points.push_back(dse::optimal_for_throughput(*o.throughput, spec.coeffs, search));
  } else {
    auto result = dse::sweep(spec);
    for (const auto& msg : result.skipped) fmt::print(stderr, "skipped {}\n", msg);
    points = o.pareto ? dse::pareto_frontier(result.points) : std::move(result.points);
  }
  if (points.empty()) {
    throw NoFeasibleDesign("the sweep produced no design points; widen the ranges or the tolerance");
  }
  std::ostringstream csv;
  dse::write_points_csv(csv, points);
  emit(csv.str(), o.out, manifest);
  return kOk;
}

int run_geometry(const GeometryOptions& o) {
  auto manifest = start_manifest("geometry", o.common);
  manifest.params["size"] = o.size;
  manifest.params["tolerance"] = o.tolerance;
  const ActivationType act = parse_activation_type(o.common.act);
  const auto coeffs = load_coeffs(o.common, act, manifest);
  dse::GeometrySearch search;
  search.tolerance = o.tolerance;
  search.mode = build_mode(o.common);
  const auto scan = dse::geometry_scan(o.size, coeffs, search);

  std::ostringstream csv;
  csv << "L,mu,K,n,m,throughput,total_area,area_per_throughput,delta,square_reference,argmin\n";
  for (std::size_t i = 0; i < scan.cells.size(); ++i) {
    const auto& c = scan.cells[i];
    const auto& p = c.point;
    fmt::print(csv, "{},{},{},{},{},{},{},{},{},{},{}\n", format_lut_count(p.shape), p.shape.group_size, p.shape.m,
               p.shape.n, p.shape.m, p.shape.throughput(), io::format_double(p.area),
               io::format_double(p.area / p.throughput), io::format_double(c.delta), c.square_reference ? 1 : 0,
               i == scan.argmin ? 1 : 0);
  }
  emit(csv.str(), o.out, manifest);
  const auto& best = scan.cells[scan.argmin].point;
  fmt::print(report_stream(o.out), "argmin L={} mu={} K={} delta={} (K {} L*mu)\n", format_lut_count(best.shape),
             best.shape.group_size, best.shape.m, io::format_double(scan.cells[scan.argmin].delta),
             best.shape.m > best.shape.n ? ">" : (best.shape.m < best.shape.n ? "<" : "="));
  return kOk;
}

int run_compare(const CompareOptions& o) {
  auto manifest = start_manifest("compare", o.common);
  const fs::path sota = o.sota.empty() ? config_dir() / "sota.ini" : fs::path(o.sota);
  manifest.params["sota"] = sota.string();
  manifest.params["tolerance"] = o.tolerance;
  manifest.params["square"] = o.square;
  manifest.add_digest(sota);
  dse::ThroughputSearch search;
  search.rectangular = !o.square;
  search.tolerance = o.tolerance;
  search.mode = build_mode(o.common);

  auto optional_value = [](const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); };
  std::ostringstream csv;
  csv << "name,act,throughput,L,mu,K,published_area,opt_L,opt_mu,opt_K,opt_throughput,opt_area,area_ratio,"
         "scaled_area,scaled_clock_mhz,area_decrease\n";
  for (const auto& entry : dse::load_sota_entries(sota)) {
    const auto coeffs = load_coeffs(o.common, entry.act, manifest);
    const auto r = dse::compare_sota(entry, coeffs, search);
    fmt::print(csv, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", entry.name, tlut::to_string(entry.act),
               r.throughput, entry.lut_count, entry.group_size, entry.fetchers, io::format_double(r.published.area),
               format_lut_count(r.optimum.shape), r.optimum.shape.group_size, r.optimum.shape.m,
               r.optimum.shape.throughput(), io::format_double(r.optimum.area), io::format_double(r.area_ratio),
               optional_value(r.scaled_area), optional_value(r.scaled_clock_mhz), optional_value(r.area_decrease));
  }
  emit(csv.str(), o.out, manifest);
  return kOk;
}

int run_efficiency(const EfficiencyOptions& o) {
  auto manifest = start_manifest("efficiency", o.common);
  manifest.params["sizes"] = o.sizes;
  const ActivationType act = parse_activation_type(o.common.act);
  const auto coeffs = load_coeffs(o.common, act, manifest);
  const auto sizes = dse::parse_int_list(o.sizes);
  const auto samples = dse::efficiency_vs_tilesize(sizes, coeffs, dse::MuSearch{build_mode(o.common)});
  std::ostringstream csv;
  csv << "act,size,mu,efficiency\n";
  for (const auto& s : samples) {
    fmt::print(csv, "{},{},{},{}\n", tlut::to_string(act), s.size, s.optimal_group_size,
               io::format_double(s.efficiency));
  }
  emit(csv.str(), o.out, manifest);
  return kOk;
}

int run_netlist(const NetlistOptions& o) {
  auto manifest = start_manifest("netlist", o.common);
  manifest.params["L"] = o.L;
  manifest.params["mu"] = o.mu;
  manifest.params["K"] = o.K;
  const TileConfig cfg(o.L, o.mu, o.K, parse_activation_type(o.common.act));
  const std::string text = dag::emit_netlist(cfg);
  emit(text, o.out, manifest);

  std::istringstream in(text);
  const auto t = dag::tally_netlist(in);
  const auto r = dag::resource_counts(cfg);
  const bool match = t.build_adders == r.build_adders && t.accumulate_adders == r.accumulate_adders &&
                     t.mux2_equivalents == r.mux2_equivalents && t.mux2_structural == r.mux2_structural &&
                     t.inverters == r.inverters && t.registers == r.output_registers;
  auto& rep = report_stream(o.out);
  fmt::print(rep, "primitive,netlist,model\n");
  fmt::print(rep, "build_adders,{},{}\n", t.build_adders, r.build_adders);
  fmt::print(rep, "accumulate_adders,{},{}\n", t.accumulate_adders, r.accumulate_adders);
  fmt::print(rep, "mux2_equivalents,{},{}\n", t.mux2_equivalents, r.mux2_equivalents);
  fmt::print(rep, "mux2_structural,{},{}\n", t.mux2_structural, r.mux2_structural);
  fmt::print(rep, "inverters,{},{}\n", t.inverters, r.inverters);
  fmt::print(rep, "registers,{},{}\n", t.registers, r.output_registers);
  if (!match) {
    fmt::print(stderr, "error: netlist tally differs from the resource model\n");
    return kVerificationFailed;
  }
  return kOk;
}

int run_calibrate(const CalibrateOptions& o) {
  auto manifest = start_manifest("calibrate", o.common);
  manifest.params["points"] = o.points;
  manifest.add_digest(o.points);
  const ActivationType act = parse_activation_type(o.common.act);
  const auto coeffs = load_coeffs(o.common, act, manifest);
  const auto mode = build_mode(o.common);

  // CSV with header n,m,mu,measured_area.
  std::istringstream in(io::read_file_text(o.points));
  std::string line;
  std::vector<cost::CalibrationPoint> points;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("n,", 0) == 0) continue;
    }
    std::istringstream row(line);
    std::string f[4];
    for (auto& field : f) {
      if (!std::getline(row, field, ',')) throw ConfigError("calibration rows need n,m,mu,measured_area: " + line);
    }
    try {
      points.push_back({cost::make_shape(std::stoll(f[0]), std::stoll(f[1]), std::stoi(f[2]), act), std::stod(f[3])});
    } catch (const std::logic_error&) {
      throw ConfigError("bad calibration row: " + line);
    }
  }
  const double gamma = cost::calibrate_gamma(points, coeffs, mode);
  double sq = 0.0;
  for (const auto& p : points) {
    const double rel = gamma * cost::total_area(p.shape, coeffs, mode).pre_gamma_sum() / p.measured_area - 1.0;
    sq += rel * rel;
  }
  auto calibrated = coeffs;
  calibrated.gamma = gamma;
  if (!o.out.empty()) {
    io::write_file_text(o.out, cost::format_coefficients(calibrated));
    manifest.write_for(o.out);
  }
  fmt::print("act,points,gamma,rms_rel_error\n{},{},{},{}\n", tlut::to_string(act), points.size(),
             io::format_double(gamma), io::format_double(std::sqrt(sq / static_cast<double>(points.size()))));
  return kOk;
}

int run_gen_matrix(const GenMatrixOptions& o) {
  if (o.rows == 0 || o.cols == 0) throw InvalidArgument("rows and cols must be >= 1");
  if (!(o.zero_fraction >= 0.0 && o.zero_fraction <= 1.0)) throw InvalidArgument("--zeros must be in [0, 1]");
  auto manifest = start_manifest("gen matrix", o.common);
  manifest.params["rows"] = o.rows;
  manifest.params["cols"] = o.cols;
  manifest.params["zeros"] = o.zero_fraction;
  std::mt19937_64 rng(o.common.seed);
  std::bernoulli_distribution zero(o.zero_fraction);
  std::bernoulli_distribution plus(0.5);
  std::vector<Trit> data(o.rows * o.cols);
  for (auto& t : data) t = zero(rng) ? Trit::Zero : (plus(rng) ? Trit::Plus : Trit::Minus);
  std::ostringstream text;
  io::write_matrix_text(text, TernaryMatrix(o.rows, o.cols, std::move(data)));
  emit(text.str(), o.out, manifest);
  return kOk;
}

int run_gen_activations(const GenActivationsOptions& o) {
  if (o.size == 0) throw InvalidArgument("--size must be >= 1");
  auto manifest = start_manifest("gen activations", o.common);
  manifest.params["size"] = o.size;
  manifest.params["binary"] = o.binary;
  manifest.params["scale"] = o.scale;
  const ActivationType act = parse_activation_type(o.common.act);
  std::mt19937_64 rng(o.common.seed);
  ActivationVector x = [&] {
    if (act == ActivationType::Int8) {
      std::uniform_int_distribution<int> dist(-128, 127);
      std::vector<std::int8_t> v(o.size);
      for (auto& e : v) e = static_cast<std::int8_t>(dist(rng));
      return ActivationVector::from_int8(std::move(v));
    }
    if (!(o.scale > 0.0 && o.scale <= 65504.0)) throw InvalidArgument("--scale must be in (0, 65504]");
    std::uniform_real_distribution<double> dist(-o.scale, o.scale);
    std::vector<fp16::Half> v(o.size);
    for (auto& e : v) e = fp16::from_double(dist(rng));
    return ActivationVector::from_fp16(std::move(v));
  }();
  if (o.binary) {
    if (o.out.empty()) throw InvalidArgument("--binary needs --out");
    io::write_file_bytes(o.out, io::serialize_activations_binary(x));
    manifest.write_for(o.out);
    return kOk;
  }
  std::ostringstream text;
  io::write_activations_csv(text, x);
  emit(text.str(), o.out, manifest);
  return kOk;
}

}  // namespace tlut::cli
