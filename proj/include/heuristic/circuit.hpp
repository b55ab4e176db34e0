#pragma once

// Boolean and arithmetic circuits: node lists in topological order where every
// gate reads two strictly earlier nodes and the value of the circuit is the
// value of its output node.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heuristic/errors.hpp"

namespace heuristic {

using NodeIndex = std::uint32_t;

enum class ArithOp : std::uint8_t { Input, Const, Add, Mul };

struct ArithNode {
  ArithOp op = ArithOp::Const;
  std::uint32_t label = 0;  // inputs: 1-based input label
  double value = 0.0;       // constants
  NodeIndex a = 0, b = 0;   // gates

  static ArithNode input(std::uint32_t label) { return {ArithOp::Input, label, 0.0, 0, 0}; }
  static ArithNode constant(double c) { return {ArithOp::Const, 0, c, 0, 0}; }
  static ArithNode add(NodeIndex a, NodeIndex b) { return {ArithOp::Add, 0, 0.0, a, b}; }
  static ArithNode mul(NodeIndex a, NodeIndex b) { return {ArithOp::Mul, 0, 0.0, a, b}; }

  bool is_gate() const noexcept { return op == ArithOp::Add || op == ArithOp::Mul; }

  friend bool operator==(const ArithNode& x, const ArithNode& y) {
    if (x.op != y.op) return false;
    switch (x.op) {
      case ArithOp::Input: return x.label == y.label;
      case ArithOp::Const: return x.value == y.value;
      default: return x.a == y.a && x.b == y.b;
    }
  }
};

// Boolean gates are stored as 4-bit truth tables indexed by (a << 1) | b.
enum class BoolOp : std::uint8_t { Input, Gate };

namespace gates {
inline constexpr std::uint8_t kAnd = 0b1000;
inline constexpr std::uint8_t kOr = 0b1110;
inline constexpr std::uint8_t kXor = 0b0110;
inline constexpr std::uint8_t kNand = 0b0111;
inline constexpr std::uint8_t kNor = 0b0001;
inline constexpr std::uint8_t kXnor = 0b1001;

inline std::optional<std::uint8_t> from_name(std::string_view name) {
  if (name == "AND") return kAnd;
  if (name == "OR") return kOr;
  if (name == "XOR") return kXor;
  if (name == "NAND") return kNand;
  if (name == "NOR") return kNor;
  if (name == "XNOR") return kXnor;
  return std::nullopt;
}

inline std::optional<std::string_view> name_of(std::uint8_t table) {
  switch (table) {
    case kAnd: return "AND";
    case kOr: return "OR";
    case kXor: return "XOR";
    case kNand: return "NAND";
    case kNor: return "NOR";
    case kXnor: return "XNOR";
    default: return std::nullopt;
  }
}

inline bool apply(std::uint8_t table, bool a, bool b) noexcept {
  return (table >> ((unsigned(a) << 1) | unsigned(b))) & 1u;
}
}  // namespace gates

struct BoolNode {
  BoolOp op = BoolOp::Input;
  std::uint32_t label = 0;
  std::uint8_t table = 0;
  NodeIndex a = 0, b = 0;

  static BoolNode input(std::uint32_t label) { return {BoolOp::Input, label, 0, 0, 0}; }
  static BoolNode gate(std::uint8_t table, NodeIndex a, NodeIndex b) {
    return {BoolOp::Gate, 0, static_cast<std::uint8_t>(table & 0xF), a, b};
  }

  friend bool operator==(const BoolNode& x, const BoolNode& y) {
    if (x.op != y.op) return false;
    if (x.op == BoolOp::Input) return x.label == y.label;
    return x.table == y.table && x.a == y.a && x.b == y.b;
  }
};

namespace detail {

template <class Node, class IsInput, class IsGate>
void validate_nodes(const std::vector<Node>& nodes, std::uint32_t input_count, NodeIndex output,
                    IsInput is_input, IsGate is_gate) {
  if (nodes.empty()) throw std::invalid_argument("circuit has no nodes");
  if (output >= nodes.size()) throw std::invalid_argument("output index out of range");
  std::vector<bool> seen(input_count, false);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node& nd = nodes[k];
    if (is_input(nd)) {
      if (nd.label < 1 || nd.label > input_count)
        throw std::invalid_argument("input label out of range at node " + std::to_string(k + 1));
      if (seen[nd.label - 1])
        throw std::invalid_argument("duplicate input label " + std::to_string(nd.label));
      seen[nd.label - 1] = true;
    } else if (is_gate(nd)) {
      if (nd.a >= k || nd.b >= k)
        throw std::invalid_argument("gate at node " + std::to_string(k + 1) +
                                    " reads a node that is not earlier");
    }
  }
  for (std::uint32_t i = 0; i < input_count; ++i)
    if (!seen[i]) throw std::invalid_argument("missing input label " + std::to_string(i + 1));
}

}  // namespace detail

class ArithCircuit {
 public:
  ArithCircuit() = default;

  // Node names are optional and only used for diagnostics and printing.
  ArithCircuit(std::vector<ArithNode> nodes, std::uint32_t input_count, NodeIndex output,
               std::vector<std::string> names = {})
      : nodes_(std::move(nodes)), input_count_(input_count), output_(output), names_(std::move(names)) {
    detail::validate_nodes(
        nodes_, input_count_, output_, [](const ArithNode& n) { return n.op == ArithOp::Input; },
        [](const ArithNode& n) { return n.is_gate(); });
    for (std::size_t k = 0; k < nodes_.size(); ++k)
      if (nodes_[k].op == ArithOp::Const && !std::isfinite(nodes_[k].value))
        throw std::invalid_argument("non-finite constant at node " + std::to_string(k + 1));
    if (!names_.empty() && names_.size() != nodes_.size())
      throw std::invalid_argument("names must match node count");
  }

  const std::vector<ArithNode>& nodes() const noexcept { return nodes_; }
  const ArithNode& node(NodeIndex k) const { return nodes_.at(k); }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::uint32_t input_count() const noexcept { return input_count_; }
  NodeIndex output() const noexcept { return output_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::string name_of(NodeIndex k) const {
    if (k < names_.size()) return names_[k];
    return "x" + std::to_string(k + 1);
  }

  // Same nodes, different output node.
  ArithCircuit with_output(NodeIndex output) const {
    return ArithCircuit(nodes_, input_count_, output, names_);
  }

  friend bool operator==(const ArithCircuit& x, const ArithCircuit& y) {
    return x.input_count_ == y.input_count_ && x.output_ == y.output_ && x.nodes_ == y.nodes_;
  }

 private:
  std::vector<ArithNode> nodes_;
  std::uint32_t input_count_ = 0;
  NodeIndex output_ = 0;
  std::vector<std::string> names_;
};

class BoolCircuit {
 public:
  BoolCircuit() = default;

  BoolCircuit(std::vector<BoolNode> nodes, std::uint32_t input_count, NodeIndex output,
              std::vector<std::string> names = {})
      : nodes_(std::move(nodes)), input_count_(input_count), output_(output), names_(std::move(names)) {
    detail::validate_nodes(
        nodes_, input_count_, output_, [](const BoolNode& n) { return n.op == BoolOp::Input; },
        [](const BoolNode& n) { return n.op == BoolOp::Gate; });
    if (!names_.empty() && names_.size() != nodes_.size())
      throw std::invalid_argument("names must match node count");
  }

  const std::vector<BoolNode>& nodes() const noexcept { return nodes_; }
  const BoolNode& node(NodeIndex k) const { return nodes_.at(k); }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::uint32_t input_count() const noexcept { return input_count_; }
  NodeIndex output() const noexcept { return output_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::string name_of(NodeIndex k) const {
    if (k < names_.size()) return names_[k];
    return "x" + std::to_string(k + 1);
  }

  friend bool operator==(const BoolCircuit& x, const BoolCircuit& y) {
    return x.input_count_ == y.input_count_ && x.output_ == y.output_ && x.nodes_ == y.nodes_;
  }

 private:
  std::vector<BoolNode> nodes_;
  std::uint32_t input_count_ = 0;
  NodeIndex output_ = 0;
  std::vector<std::string> names_;
};

inline bool eval_bool(const BoolCircuit& c, const std::vector<bool>& bits) {
  if (bits.size() != c.input_count())
    throw std::invalid_argument("expected " + std::to_string(c.input_count()) + " input bits, got " +
                                std::to_string(bits.size()));
  std::vector<char> v(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const BoolNode& nd = c.nodes()[k];
    v[k] = nd.op == BoolOp::Input ? bits[nd.label - 1] : gates::apply(nd.table, v[nd.a], v[nd.b]);
  }
  return v[c.output()];
}

inline bool eval_bool(const BoolCircuit& c, std::initializer_list<bool> bits) {
  return eval_bool(c, std::vector<bool>(bits));
}

// Evaluates 64 input assignments at once; bit j of inputs[i] is input i+1 in lane j.
inline std::uint64_t eval_bool_lanes(const BoolCircuit& c, std::span<const std::uint64_t> inputs,
                                     std::vector<std::uint64_t>& scratch) {
  scratch.resize(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const BoolNode& nd = c.nodes()[k];
    if (nd.op == BoolOp::Input) {
      scratch[k] = inputs[nd.label - 1];
      continue;
    }
    const std::uint64_t a = scratch[nd.a], b = scratch[nd.b];
    std::uint64_t out = 0;
    if (nd.table & 0b0001) out |= ~a & ~b;
    if (nd.table & 0b0010) out |= ~a & b;
    if (nd.table & 0b0100) out |= a & ~b;
    if (nd.table & 0b1000) out |= a & b;
    scratch[k] = out;
  }
  return scratch[c.output()];
}

inline double eval_arith(const ArithCircuit& c, std::span<const double> inputs) {
  if (inputs.size() != c.input_count())
    throw std::invalid_argument("expected " + std::to_string(c.input_count()) + " inputs, got " +
                                std::to_string(inputs.size()));
  std::vector<double> v(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const ArithNode& nd = c.nodes()[k];
    switch (nd.op) {
      case ArithOp::Input: v[k] = inputs[nd.label - 1]; break;
      case ArithOp::Const: v[k] = nd.value; break;
      case ArithOp::Add: v[k] = v[nd.a] + v[nd.b]; break;
      case ArithOp::Mul: v[k] = v[nd.a] * v[nd.b]; break;
    }
    if (!std::isfinite(v[k])) throw NumericError("non-finite value", k);
  }
  return v[c.output()];
}

inline double eval_arith(const ArithCircuit& c, std::initializer_list<double> inputs) {
  return eval_arith(c, std::span<const double>(inputs.begin(), inputs.size()));
}

}  // namespace heuristic
