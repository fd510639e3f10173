// SPDX-License-Identifier: Apache-2.0
//
// Structural netlist for a full accelerator instance.
//
//   CONFIG L=<L> MU=<mu> K=<K> ACT=<int8|fp16>
//   INST <id> <add|mux|inv|reg> <operand ids...> [+|-]
//
// Order: build adders of each LUT by magnitude, then FAC units by (l, k),
// then the per-output accumulation chain and register. Net names:
//   lut<l>.x<i>     activation tap i of LUT l
//   lut<l>.v<v>     LUT entry of magnitude v (singletons are the taps)
//   fac<l>_<k>.mux  selector over all entries of LUT l, driven by key (l, k)
//   fac<l>_<k>.inv  conditional sign flip of the selected entry
//   out<k>.s<j>     spatial reduction over LUTs 0..j
//   out<k>.acc      accumulator adder, out<k>.reg its register
// Mux operand count is the table size, i.e. the 2:1-equivalent count used by
// the cost model; the structural 2:1 count is one less per mux.
#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "tlut/types.hpp"

namespace tlut::dag {

void write_netlist(std::ostream& out, const TileConfig& cfg);
std::string emit_netlist(const TileConfig& cfg);

struct NetlistTally {
  std::int64_t build_adders = 0;
  std::int64_t accumulate_adders = 0;
  std::int64_t mux2_equivalents = 0;
  std::int64_t mux2_structural = 0;
  std::int64_t inverters = 0;
  std::int64_t registers = 0;
  std::int64_t instances = 0;
};

/// Counts primitives from the INST lines. Throws ConfigError on malformed lines.
NetlistTally tally_netlist(std::istream& in);

}  // namespace tlut::dag
