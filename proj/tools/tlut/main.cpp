// SPDX-License-Identifier: Apache-2.0
//
// tlut: encode ternary weights, simulate the LUT datapath, and explore the
// area model from the command line.
#include <functional>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "tlut/errors.hpp"

namespace {

using namespace tlut::cli;

void add_seed(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed for generated fixtures")->capture_default_str();
}

CLI::Option* add_act(CLI::App* cmd, Common& c) {
  return cmd->add_option("--act", c.act, "Activation type: int8 or fp16")->capture_default_str();
}

void add_model(CLI::App* cmd, Common& c) {
  cmd->add_option("--coeffs", c.coeffs, "Coefficient file (default: shipped coeffs-<act>.ini)");
  cmd->add_flag("--exact", c.exact, "Use the exact DAG adder count for the build term");
}

void add_tile(CLI::App* cmd, int& L, int& mu, int& K) {
  cmd->add_option("--L", L, "LUTs per tile")->required();
  cmd->add_option("--mu", mu, "Group size")->required();
  cmd->add_option("--K", K, "Fetchers per LUT (outputs per tile)")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LUT-based ternary GEMV simulator and area model"};
  app.set_version_flag("--version", TLUT_VERSION);
  app.require_subcommand(1);
  std::function<int()> run;

  EncodeOptions enc;
  auto* c = app.add_subcommand("encode", "Pack a ternary matrix into a key stream");
  c->add_option("--in", enc.in, "Matrix text file")->required();
  c->add_option("--out", enc.out, "Stream file")->required();
  c->add_option("--mu", enc.mu, "Group size")->capture_default_str();
  add_seed(c, enc.common);
  c->callback([&] { run = [&] { return run_encode(enc); }; });

  DecodeOptions dec;
  c = app.add_subcommand("decode", "Unpack a key stream into matrix text");
  c->add_option("--in", dec.in, "Stream file")->required();
  c->add_option("--out", dec.out, "Matrix text file (default: stdout)");
  add_seed(c, dec.common);
  c->callback([&] { run = [&] { return run_decode(dec); }; });

  SimulateOptions sim;
  c = app.add_subcommand("simulate", "Run the LUT GEMV datapath");
  c->add_option("--weights", sim.weights, "Matrix text file")->required();
  c->add_option("--activations", sim.activations, "Activation CSV (or binary with --binary)")->required();
  c->add_flag("--binary", sim.binary, "Activations are raw int8 bytes or little-endian fp16 words");
  add_tile(c, sim.L, sim.mu, sim.K);
  add_act(c, sim.common);
  c->add_option("--out", sim.out, "Output CSV (default: stdout)");
  c->add_flag("--check", sim.check, "Compare against the reference oracle");
  c->add_flag("--no-overlap", sim.no_overlap, "Report cycles without build/fetch overlap");
  add_seed(c, sim.common);
  c->callback([&] { run = [&] { return run_simulate(sim); }; });

  CyclesOptions cyc;
  c = app.add_subcommand("cycles", "Cycle count for an M x N GEMV");
  add_tile(c, cyc.L, cyc.mu, cyc.K);
  add_act(c, cyc.common);
  c->add_option("--rows", cyc.rows, "Matrix rows M")->required();
  c->add_option("--cols", cyc.cols, "Matrix columns N")->required();
  c->add_flag("--no-overlap", cyc.no_overlap, "Build latency is paid per input tile");
  add_seed(c, cyc.common);
  c->callback([&] { run = [&] { return run_cycles(cyc); }; });

  CostOptions cost;
  c = app.add_subcommand("cost", "Area breakdown per group size");
  auto* l_opt = c->add_option("--L", cost.L, "LUTs per tile (n = L * mu)");
  c->add_option("--n", cost.n, "Tile inputs; L = n / mu may be fractional")->excludes(l_opt);
  c->add_option("--K,--m", cost.m, "Tile outputs")->required();
  c->add_option("--mu", cost.mu, "Group sizes: range a-b or list a,b,c")->capture_default_str();
  add_act(c, cost.common);
  add_model(c, cost.common);
  c->add_option("--out", cost.out, "Output CSV (default: stdout)");
  add_seed(c, cost.common);
  c->callback([&] { run = [&] { return run_cost(cost); }; });

  BaselineOptions base;
  c = app.add_subcommand("baseline", "Multiplier baselines against the optimal LUT tile");
  c->add_option("--n", base.n, "Tile inputs")->capture_default_str();
  c->add_option("--m", base.m, "Tile outputs")->capture_default_str();
  add_act(c, base.common);
  add_model(c, base.common);
  c->add_option("--out", base.out, "Output CSV (default: stdout)");
  add_seed(c, base.common);
  c->callback([&] { run = [&] { return run_baseline(base); }; });

  DseOptions dse;
  c = app.add_subcommand("dse", "Sweep the design space");
  c->add_option("--spec", dse.spec, "Sweep spec file");
  auto* act_opt = add_act(c, dse.common);
  add_model(c, dse.common);
  c->add_option("--mu", dse.mu, "Group size range")->capture_default_str();
  c->add_option("--sizes", dse.sizes, "Square tile sizes a,b,c (L = n / mu)");
  c->add_option("--L", dse.L, "LUT count range");
  c->add_option("--K", dse.K, "Fetcher range");
  c->add_flag("--square", dse.square, "Only K = L * mu");
  c->add_flag("--integral", dse.integral, "Skip tile sizes not divisible by mu");
  c->add_option("--throughput", dse.throughput, "Keep points with n * m in the band around this target");
  c->add_option("--tolerance", dse.tolerance, "Relative band half-width")->capture_default_str();
  c->add_flag("--optimal", dse.optimal, "Emit only the minimum-area point for --throughput");
  c->add_flag("--pareto", dse.pareto, "Emit only the area/throughput Pareto frontier");
  c->add_option("--out", dse.out, "Output CSV (default: stdout)");
  add_seed(c, dse.common);
  c->callback([&, act_opt] {
    dse.act_given = act_opt->count() > 0;
    run = [&] { return run_dse(dse); };
  });

  GeometryOptions geo;
  c = app.add_subcommand("geometry", "Rectangular tiles around a square tile size");
  c->add_option("--size", geo.size, "Total tile size n * m (a perfect square)")->capture_default_str();
  c->add_option("--tolerance", geo.tolerance, "Relative band half-width")->capture_default_str();
  add_act(c, geo.common);
  add_model(c, geo.common);
  c->add_option("--out", geo.out, "Output CSV (default: stdout)");
  add_seed(c, geo.common);
  c->callback([&] { run = [&] { return run_geometry(geo); }; });

  CompareOptions cmp;
  c = app.add_subcommand("compare", "Re-optimise published designs at their throughput");
  c->add_option("--sota", cmp.sota, "Entries file (default: shipped sota.ini)");
  c->add_option("--tolerance", cmp.tolerance, "Relative throughput band half-width")->capture_default_str();
  c->add_flag("--square", cmp.square, "Restrict the optimum to square tiles");
  add_model(c, cmp.common);
  c->add_option("--out", cmp.out, "Output CSV (default: stdout)");
  add_seed(c, cmp.common);
  c->callback([&] { run = [&] { return run_compare(cmp); }; });

  EfficiencyOptions eff;
  c = app.add_subcommand("efficiency", "Efficiency of square tiles at their optimal group size");
  c->add_option("--sizes", eff.sizes, "Ascending tile sizes")->capture_default_str();
  add_act(c, eff.common);
  add_model(c, eff.common);
  c->add_option("--out", eff.out, "Output CSV (default: stdout)");
  add_seed(c, eff.common);
  c->callback([&] { run = [&] { return run_efficiency(eff); }; });

  NetlistOptions net;
  c = app.add_subcommand("netlist", "Emit the structural netlist of one tile");
  add_tile(c, net.L, net.mu, net.K);
  add_act(c, net.common);
  c->add_option("--out", net.out, "Netlist file (default: stdout)");
  add_seed(c, net.common);
  c->callback([&] { run = [&] { return run_netlist(net); }; });

  CalibrateOptions cal;
  c = app.add_subcommand("calibrate", "Fit gamma to measured areas");
  c->add_option("--points", cal.points, "CSV with n,m,mu,measured_area")->required();
  add_act(c, cal.common);
  add_model(c, cal.common);
  c->add_option("--out", cal.out, "Write the calibrated coefficient file here");
  add_seed(c, cal.common);
  c->callback([&] { run = [&] { return run_calibrate(cal); }; });

  auto* gen = app.add_subcommand("gen", "Generate seeded fixtures");
  gen->require_subcommand(1);
  GenMatrixOptions gm;
  c = gen->add_subcommand("matrix", "Random ternary matrix");
  c->add_option("--rows", gm.rows)->capture_default_str();
  c->add_option("--cols", gm.cols)->capture_default_str();
  c->add_option("--zeros", gm.zero_fraction, "Probability of a zero trit")->capture_default_str();
  c->add_option("--out", gm.out, "Matrix text file (default: stdout)");
  add_seed(c, gm.common);
  c->callback([&] { run = [&] { return run_gen_matrix(gm); }; });

  GenActivationsOptions ga;
  c = gen->add_subcommand("activations", "Random activation vector");
  c->add_option("--size", ga.size)->capture_default_str();
  add_act(c, ga.common);
  c->add_option("--scale", ga.scale, "fp16 values are uniform in [-scale, scale]")->capture_default_str();
  c->add_flag("--binary", ga.binary, "Write raw bytes instead of CSV");
  c->add_option("--out", ga.out, "Output file (default: stdout)");
  add_seed(c, ga.common);
  c->callback([&] { run = [&] { return run_gen_activations(ga); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    return run();
  } catch (const tlut::VerificationFailure& e) {
    fmt::print(stderr, "verification failed: {}\n", e.what());
    return kVerificationFailed;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsageError;
  }
}
