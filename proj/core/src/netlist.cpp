// SPDX-License-Identifier: Apache-2.0
#include "tlut/netlist.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "tlut/adder_dag.hpp"
#include "tlut/errors.hpp"

namespace tlut::dag {

namespace {

std::string entry_net(const AdderDag& dag, int lut, NodeRef node) {
  if (dag.is_input(node)) return "lut" + std::to_string(lut) + ".x" + std::to_string(node.index);
  return "lut" + std::to_string(lut) + ".v" + std::to_string(dag.node_group_value(node));
}

std::string fac_net(int lut, int k) { return "fac" + std::to_string(lut) + "_" + std::to_string(k); }

}  // namespace

void write_netlist(std::ostream& out, const TileConfig& cfg) {
  const int L = cfg.lut_count();
  const int K = cfg.fetchers_per_lut();
  const AdderDag& dag = optimized_dag(cfg.group_size());

  out << "CONFIG L=" << L << " MU=" << cfg.group_size() << " K=" << K
      << " ACT=" << to_string(cfg.activation()) << '\n';

  std::vector<std::uint32_t> by_magnitude(dag.adders().size());
  for (std::size_t i = 0; i < by_magnitude.size(); ++i) {
    by_magnitude[i] = static_cast<std::uint32_t>(dag.input_count() + i);
  }
  std::sort(by_magnitude.begin(), by_magnitude.end(), [&](std::uint32_t a, std::uint32_t b) {
    return dag.node_group_value(NodeRef{a}) < dag.node_group_value(NodeRef{b});
  });

  for (int l = 0; l < L; ++l) {
    for (std::uint32_t index : by_magnitude) {
      const NodeRef self{index};
      const AdderNode& a = dag.adder(self);
      out << "INST " << entry_net(dag, l, self) << " add " << entry_net(dag, l, a.left) << ' '
          << entry_net(dag, l, a.right) << ' ' << (a.right_sign > 0 ? '+' : '-') << '\n';
    }
  }

  for (int l = 0; l < L; ++l) {
    for (int k = 0; k < K; ++k) {
      out << "INST " << fac_net(l, k) << ".mux mux";
      for (NodeRef r : dag.outputs()) out << ' ' << entry_net(dag, l, r);
      out << '\n';
      out << "INST " << fac_net(l, k) << ".inv inv " << fac_net(l, k) << ".mux\n";
    }
  }

  for (int k = 0; k < K; ++k) {
    const std::string o = "out" + std::to_string(k);
    std::string partial = fac_net(0, k) + ".inv";
    for (int l = 1; l < L; ++l) {
      const std::string sum = o + ".s" + std::to_string(l);
      out << "INST " << sum << " add " << partial << ' ' << fac_net(l, k) << ".inv +\n";
      partial = sum;
    }
    out << "INST " << o << ".acc add " << partial << ' ' << o << ".reg +\n";
    out << "INST " << o << ".reg reg " << o << ".acc\n";
  }

  const ResourceCounts rc = resource_counts(cfg);
  out << "# build_adders=" << rc.build_adders << " accumulate_adders=" << rc.accumulate_adders
      << " mux2_equivalents=" << rc.mux2_equivalents << " mux2_structural=" << rc.mux2_structural
      << " inverters=" << rc.inverters << " registers=" << rc.output_registers << '\n';
}

std::string emit_netlist(const TileConfig& cfg) {
  std::ostringstream out;
  write_netlist(out, cfg);
  return out.str();
}

NetlistTally tally_netlist(std::istream& in) {
  NetlistTally t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("CONFIG", 0) == 0) continue;
    std::istringstream fields(line);
    std::string tag, id, kind;
    fields >> tag >> id >> kind;
    if (tag != "INST" || id.empty() || kind.empty()) {
      throw ConfigError("malformed netlist line " + std::to_string(line_no));
    }
    std::vector<std::string> operands;
    for (std::string op; fields >> op;) {
      if (op != "+" && op != "-") operands.push_back(op);
    }
    ++t.instances;
    if (kind == "add") {
      (id.rfind("lut", 0) == 0 ? t.build_adders : t.accumulate_adders) += 1;
    } else if (kind == "mux") {
      t.mux2_equivalents += static_cast<std::int64_t>(operands.size());
      t.mux2_structural += static_cast<std::int64_t>(operands.size()) - 1;
    } else if (kind == "inv") {
      ++t.inverters;
    } else if (kind == "reg") {
      ++t.registers;
    } else {
      throw ConfigError("unknown instance kind '" + kind + "' on netlist line " + std::to_string(line_no));
    }
  }
  return t;
}

}  // namespace tlut::dag
