// SPDX-License-Identifier: Apache-2.0
#include "tlut/adder_dag.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>

#include "tlut/arith.hpp"
#include "tlut/errors.hpp"

namespace tlut::dag {

namespace {

void check_closed_form_domain(int group_size) {
  if (group_size < 2) throw InvalidArgument("closed-form adder terms need mu >= 2");
  if (group_size > kMaxGroupSize) throw InvalidArgument("mu must be <= 8");
}

void check_group_size(int group_size) {
  if (group_size < 1 || group_size > kMaxGroupSize) {
    throw InvalidArgument("mu must be in [1, 8], got " + std::to_string(group_size));
  }
}

// Digits of a positive-half magnitude, most significant first.
std::vector<int> balanced_digits(std::int64_t magnitude, int group_size) {
  std::vector<int> digits(static_cast<std::size_t>(group_size));
  for (int i = group_size - 1; i >= 0; --i) {
    int d = static_cast<int>(magnitude % 3);
    magnitude /= 3;
    if (d == 2) {
      d = -1;
      ++magnitude;
    }
    digits[static_cast<std::size_t>(i)] = d;
  }
  return digits;
}

}  // namespace

std::int64_t sparsity_term(int group_size) {
  check_closed_form_domain(group_size);
  std::int64_t s = 1;
  for (int mu = 3; mu <= group_size; ++mu) s += pow3(mu - 2);
  return s;
}

std::int64_t redundancy_term(int group_size) {
  check_closed_form_domain(group_size);
  std::int64_t sum = 0;
  for (int k = 0; k <= group_size - 3; ++k) sum += (std::int64_t{1} << k) * (pow3(group_size - 2 - k) - 1);
  return 2 * sum;
}

std::int64_t adder_bound(int group_size) {
  check_group_size(group_size);
  if (group_size == 1) return 0;
  return (group_size - 1) * lut_table_size(group_size) - redundancy_term(group_size) -
         group_size * sparsity_term(group_size);
}

std::int64_t optimized_adder_count(int group_size) {
  check_group_size(group_size);
  return lut_table_size(group_size) - group_size;
}

std::int64_t naive_adder_count(int group_size) {
  check_group_size(group_size);
  return (group_size - 1) * pow3(group_size);
}

std::int64_t naive_adder_count_alt(int group_size) {
  check_group_size(group_size);
  return (group_size - 1) * (pow3(group_size) - 1);
}

const AdderNode& AdderDag::adder(NodeRef r) const {
  if (is_input(r) || r.index >= node_count()) throw InvalidArgument("node is not an adder");
  return adders_[r.index - input_count()];
}

NodeRef AdderDag::output(std::int64_t magnitude) const {
  if (magnitude < 1 || magnitude > static_cast<std::int64_t>(outputs_.size())) {
    throw InvalidArgument("LUT magnitude out of range: " + std::to_string(magnitude));
  }
  return outputs_[static_cast<std::size_t>(magnitude - 1)];
}

std::int64_t AdderDag::node_group_value(NodeRef r) const {
  if (r.index >= node_values_.size()) throw InvalidArgument("node index out of range");
  return node_values_[r.index];
}

AdderDag build_optimized_dag(int group_size) {
  check_group_size(group_size);
  const std::int64_t table = lut_table_size(group_size);

  struct Pending {
    int nonzeros;
    std::int64_t value;
    std::int64_t parent_value;
    int last_position;
    int last_digit;
  };
  std::vector<Pending> pending;
  AdderDag dag;
  dag.group_size_ = group_size;
  dag.outputs_.resize(static_cast<std::size_t>(table));
  for (int i = 0; i < group_size; ++i) dag.node_values_.push_back(pow3(group_size - 1 - i));

  std::map<std::int64_t, NodeRef> node_of_value;
  for (int i = 0; i < group_size; ++i) {
    node_of_value[pow3(group_size - 1 - i)] = NodeRef{static_cast<std::uint32_t>(i)};
  }

  for (std::int64_t v = 1; v <= table; ++v) {
    const auto digits = balanced_digits(v, group_size);
    int nonzeros = 0;
    int last = -1;
    for (int i = 0; i < group_size; ++i) {
      if (digits[static_cast<std::size_t>(i)] != 0) {
        ++nonzeros;
        last = i;
      }
    }
    if (nonzeros >= 2) {
      const int d = digits[static_cast<std::size_t>(last)];
      pending.push_back({nonzeros, v, v - d * pow3(group_size - 1 - last), last, d});
    }
  }
  // Parents have one fewer non-zero trit, so this order is topological.
  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    return a.nonzeros != b.nonzeros ? a.nonzeros < b.nonzeros : a.value < b.value;
  });
  for (const Pending& p : pending) {
    const NodeRef self{static_cast<std::uint32_t>(dag.node_count())};
    dag.adders_.push_back(AdderNode{node_of_value.at(p.parent_value),
                                    NodeRef{static_cast<std::uint32_t>(p.last_position)}, p.last_digit});
    dag.node_values_.push_back(p.value);
    node_of_value[p.value] = self;
  }
  for (std::int64_t v = 1; v <= table; ++v) dag.outputs_[static_cast<std::size_t>(v - 1)] = node_of_value.at(v);
  return dag;
}

const AdderDag& optimized_dag(int group_size) {
  check_group_size(group_size);
  static std::array<AdderDag, kMaxGroupSize + 1> cache;
  static std::array<std::once_flag, kMaxGroupSize + 1> once;
  const auto slot = static_cast<std::size_t>(group_size);
  std::call_once(once[slot], [&] { cache[slot] = build_optimized_dag(group_size); });
  return cache[slot];
}

void verify_dag(const AdderDag& dag, int trials, std::uint64_t seed) {
  const int mu = dag.group_size();
  const std::int64_t table = lut_table_size(mu);

  for (std::size_t k = 0; k < dag.adders().size(); ++k) {
    const AdderNode& a = dag.adders()[k];
    const NodeRef self{static_cast<std::uint32_t>(dag.input_count() + k)};
    const std::int64_t value = dag.node_group_value(self);
    if (a.left.index >= self.index || a.right.index >= self.index) {
      throw VerificationFailure("adder " + std::to_string(self.index) + " is not topologically ordered");
    }
    if (value <= 0) {
      throw VerificationFailure("adder " + std::to_string(self.index) + " computes a negative-half group");
    }
    if (!dag.is_input(a.right) || (a.right_sign != 1 && a.right_sign != -1)) {
      throw VerificationFailure("adder " + std::to_string(self.index) + " right operand is not a signed tap");
    }
    const auto left_digits = balanced_digits(dag.node_group_value(a.left), mu);
    if (dag.node_group_value(a.left) <= 0 || left_digits[a.right.index] != 0) {
      throw VerificationFailure("adder " + std::to_string(self.index) + " has a zero-trit operand");
    }
    if (dag.node_group_value(a.left) + a.right_sign * dag.node_group_value(a.right) != value) {
      throw VerificationFailure("adder " + std::to_string(self.index) + " operands do not sum to its group");
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(-1000, 1000);
  std::vector<std::int64_t> x(static_cast<std::size_t>(mu));
  for (int t = 0; t < trials; ++t) {
    for (auto& xi : x) xi = dist(rng);
    const auto entries = dag.evaluate<Int64Arith>(x);
    for (std::int64_t v = 1; v <= table; ++v) {
      const auto digits = balanced_digits(v, mu);
      std::int64_t expected = 0;
      for (int i = 0; i < mu; ++i) expected += digits[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      if (entries[static_cast<std::size_t>(v - 1)] != expected) {
        std::ostringstream msg;
        msg << "DAG mismatch at magnitude " << v << " for x = (";
        for (int i = 0; i < mu; ++i) msg << (i ? ", " : "") << x[static_cast<std::size_t>(i)];
        msg << "): got " << entries[static_cast<std::size_t>(v - 1)] << ", expected " << expected;
        throw VerificationFailure(msg.str());
      }
    }
  }
}

ResourceCounts resource_counts(const TileConfig& cfg) {
  const std::int64_t L = cfg.lut_count();
  const std::int64_t K = cfg.fetchers_per_lut();
  const std::int64_t table = lut_table_size(cfg.group_size());
  ResourceCounts c;
  c.build_adders = L * optimized_adder_count(cfg.group_size());
  c.accumulate_adders = L * K;
  c.mux2_equivalents = L * K * table;
  c.mux2_structural = L * K * (table - 1);
  c.inverters = L * K;
  c.output_registers = K;
  c.lut_storage_words = L * table;
  return c;
}

}  // namespace tlut::dag
