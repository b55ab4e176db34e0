#pragma once

// Seeded random circuits for property tests and the desiderata harness.
// Inputs come first (labels 1..n in order), then constants, then gates whose
// operands are drawn uniformly from earlier nodes. The output is the last node.

#include <algorithm>
#include <limits>
#include <vector>

#include "heuristic/circuit.hpp"
#include "heuristic/rng.hpp"

namespace heuristic {

struct RandomArithSpec {
  std::uint32_t n = 3;
  std::uint32_t gates = 10;
  std::uint32_t constants = 1;
  double mul_fraction = 0.5;
  double const_lo = -2.0, const_hi = 2.0;
  // Polynomial degree cap on every node; multiplications that would exceed it
  // become additions.
  std::uint32_t max_degree = std::numeric_limits<std::uint32_t>::max();
};

struct RandomBoolSpec {
  std::uint32_t n = 3;
  std::uint32_t gates = 10;
  std::vector<std::uint8_t> gate_mix = {gates::kAnd, gates::kOr,  gates::kXor,
                                        gates::kNand, gates::kNor, gates::kXnor};
};

inline ArithCircuit random_arith_circuit(const RandomArithSpec& spec, Seed seed) {
  if (spec.n + spec.constants == 0) throw std::invalid_argument("random circuit needs inputs or constants");
  Stream rng(seed);
  std::vector<ArithNode> nodes;
  std::vector<std::uint32_t> degree;
  for (std::uint32_t i = 1; i <= spec.n; ++i) {
    nodes.push_back(ArithNode::input(i));
    degree.push_back(1);
  }
  for (std::uint32_t i = 0; i < spec.constants; ++i) {
    nodes.push_back(ArithNode::constant(spec.const_lo + (spec.const_hi - spec.const_lo) * rng.uniform()));
    degree.push_back(0);
  }
  for (std::uint32_t g = 0; g < spec.gates; ++g) {
    const auto k = static_cast<NodeIndex>(nodes.size());
    const auto a = static_cast<NodeIndex>(rng.below(k));
    const auto b = static_cast<NodeIndex>(rng.below(k));
    const bool want_mul = rng.uniform() < spec.mul_fraction;
    const std::uint64_t mul_degree = std::uint64_t{degree[a]} + degree[b];
    if (want_mul && mul_degree <= spec.max_degree) {
      nodes.push_back(ArithNode::mul(a, b));
      degree.push_back(static_cast<std::uint32_t>(mul_degree));
    } else {
      nodes.push_back(ArithNode::add(a, b));
      degree.push_back(std::max(degree[a], degree[b]));
    }
  }
  NodeIndex out = static_cast<NodeIndex>(nodes.size() - 1);
  if (spec.gates == 0) out = static_cast<NodeIndex>(rng.below(spec.n ? spec.n : nodes.size()));
  return ArithCircuit(std::move(nodes), spec.n, out);
}

inline BoolCircuit random_bool_circuit(const RandomBoolSpec& spec, Seed seed) {
  if (spec.n == 0) throw std::invalid_argument("boolean random circuit needs at least one input");
  if (spec.gate_mix.empty()) throw std::invalid_argument("gate mix is empty");
  Stream rng(seed);
  std::vector<BoolNode> nodes;
  for (std::uint32_t i = 1; i <= spec.n; ++i) nodes.push_back(BoolNode::input(i));
  for (std::uint32_t g = 0; g < spec.gates; ++g) {
    const auto k = static_cast<NodeIndex>(nodes.size());
    const auto a = static_cast<NodeIndex>(rng.below(k));
    const auto b = static_cast<NodeIndex>(rng.below(k));
    nodes.push_back(BoolNode::gate(spec.gate_mix[rng.below(spec.gate_mix.size())], a, b));
  }
  const auto out = static_cast<NodeIndex>(spec.gates == 0 ? rng.below(nodes.size()) : nodes.size() - 1);
  return BoolCircuit(std::move(nodes), spec.n, out);
}

// Polynomial degree of every node.
inline std::vector<std::uint32_t> node_degrees(const ArithCircuit& c) {
  std::vector<std::uint32_t> d(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const ArithNode& nd = c.nodes()[k];
    switch (nd.op) {
      case ArithOp::Input: d[k] = 1; break;
      case ArithOp::Const: d[k] = 0; break;
      case ArithOp::Add: d[k] = std::max(d[nd.a], d[nd.b]); break;
      case ArithOp::Mul: d[k] = d[nd.a] + d[nd.b]; break;
    }
  }
  return d;
}

}  // namespace heuristic
