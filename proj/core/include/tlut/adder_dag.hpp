// SPDX-License-Identifier: Apache-2.0
//
// Build-phase adder network for one LUT, plus closed-form and exact resource
// counts for a full accelerator instance.
//
// The network only produces positive-half groups (first non-zero trit is +1).
// A group with two or more non-zero trits is computed as
//
//   entry(group with its last non-zero trit cleared) +/- x[that position]
//
// so zero trits never reach an adder and shared prefixes are built once.
// Singleton groups +e_i are wires to the input taps. The resulting count is
// (3^mu - 1) / 2 - mu adders per LUT.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tlut/errors.hpp"
#include "tlut/types.hpp"

namespace tlut::dag {

/// Sparsity deduction: S(2) = 1, S(mu) = S(mu - 1) + 3^(mu - 2).
std::int64_t sparsity_term(int group_size);
/// Redundancy deduction: 2 * sum_{k=0}^{mu-3} 2^k (3^(mu-2-k) - 1).
std::int64_t redundancy_term(int group_size);
/// Upper bound on adders per LUT: (mu - 1)(3^mu - 1)/2 - R(mu) - mu S(mu).
/// Zero for mu = 1.
std::int64_t adder_bound(int group_size);
/// (3^mu - 1) / 2 - mu, the count realised by build_optimized_dag.
std::int64_t optimized_adder_count(int group_size);
/// Unoptimised baseline: 3^mu entries of (mu - 1) additions each.
std::int64_t naive_adder_count(int group_size);
/// The alternative baseline (mu - 1)(3^mu - 1).
std::int64_t naive_adder_count_alt(int group_size);

struct NodeRef {
  std::uint32_t index = 0;
  friend bool operator==(NodeRef, NodeRef) = default;
};

struct AdderNode {
  NodeRef left;
  NodeRef right;
  int right_sign = 1;  // +1 or -1
};

class AdderDag {
 public:
  int group_size() const noexcept { return group_size_; }
  std::size_t input_count() const noexcept { return static_cast<std::size_t>(group_size_); }
  std::size_t node_count() const noexcept { return input_count() + adders_.size(); }
  bool is_input(NodeRef r) const noexcept { return r.index < input_count(); }

  /// Adders in topological order; node index = input_count() + position.
  std::span<const AdderNode> adders() const noexcept { return adders_; }
  const AdderNode& adder(NodeRef r) const;

  /// Node holding the entry of magnitude v, 1 <= v <= (3^mu - 1) / 2.
  NodeRef output(std::int64_t magnitude) const;
  std::span<const NodeRef> outputs() const noexcept { return outputs_; }

  /// Signed base-3 value of the group each node computes.
  std::int64_t node_group_value(NodeRef r) const;

  /// Values of every node, inputs first.
  template <class Arith>
  std::vector<typename Arith::Entry> evaluate_nodes(std::span<const typename Arith::Input> x) const;

  /// LUT entries in magnitude order: result[v - 1] = sum_i c_i x_i.
  template <class Arith>
  std::vector<typename Arith::Entry> evaluate(std::span<const typename Arith::Input> x) const;

 private:
  friend AdderDag build_optimized_dag(int group_size);

  int group_size_ = 1;
  std::vector<AdderNode> adders_;
  std::vector<NodeRef> outputs_;
  std::vector<std::int64_t> node_values_;
};

/// Throws InvalidArgument unless 1 <= mu <= 8.
AdderDag build_optimized_dag(int group_size);

/// Shared immutable instance per group size.
const AdderDag& optimized_dag(int group_size);

/// Checks every output against brute-force dot products on random integer
/// activations, plus the structural sparsity and symmetry rules. Throws
/// VerificationFailure naming the offending magnitude and activations.
void verify_dag(const AdderDag& dag, int trials, std::uint64_t seed);

struct ResourceCounts {
  std::int64_t build_adders = 0;
  std::int64_t accumulate_adders = 0;
  std::int64_t mux2_equivalents = 0;  // table size per FAC
  std::int64_t mux2_structural = 0;   // (table size - 1) per FAC
  std::int64_t inverters = 0;
  std::int64_t output_registers = 0;
  std::int64_t lut_storage_words = 0;

  friend bool operator==(const ResourceCounts&, const ResourceCounts&) = default;
};

ResourceCounts resource_counts(const TileConfig& cfg);

// ---------------------------------------------------------------------------

template <class Arith>
std::vector<typename Arith::Entry> AdderDag::evaluate_nodes(
    std::span<const typename Arith::Input> x) const {
  if (x.size() != input_count()) throw InvalidArgument("DAG input count does not match group size");
  std::vector<typename Arith::Entry> values;
  values.reserve(node_count());
  for (std::size_t i = 0; i < input_count(); ++i) values.push_back(Arith::widen(x[i]));
  for (const AdderNode& a : adders_) {
    const auto lhs = values[a.left.index];
    const auto rhs = values[a.right.index];
    values.push_back(a.right_sign > 0 ? Arith::add(lhs, rhs) : Arith::sub(lhs, rhs));
  }
  return values;
}

template <class Arith>
std::vector<typename Arith::Entry> AdderDag::evaluate(std::span<const typename Arith::Input> x) const {
  const auto values = evaluate_nodes<Arith>(x);
  std::vector<typename Arith::Entry> entries;
  entries.reserve(outputs_.size());
  for (NodeRef r : outputs_) entries.push_back(values[r.index]);
  return entries;
}

}  // namespace tlut::dag
