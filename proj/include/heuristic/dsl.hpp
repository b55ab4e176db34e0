#pragma once

// Line-oriented circuit text format.
//
//   input <name>
//   const <name> <decimal>
//   add <name> <a> <b>
//   mul <name> <a> <b>
//   gate <name> <AND|OR|XOR|NAND|NOR|XNOR> <a> <b>
//   gate <name> tt <bits> <a> <b>      bits = outputs for (a,b) = 00 01 10 11
//   output <name>
//
// Everything after '#' is a comment. Nodes are numbered in file order and
// inputs are labeled 1..n in the order they appear.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "heuristic/circuit.hpp"
#include "heuristic/errors.hpp"

namespace heuristic {

using AnyCircuit = std::variant<ArithCircuit, BoolCircuit>;

enum class CircuitKind { Auto, Arith, Bool };

namespace detail {

struct Statement {
  std::size_t line = 0;
  std::vector<std::string> words;
};

inline std::vector<Statement> tokenize(std::string_view text) {
  std::vector<Statement> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Statement st{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) st.words.emplace_back(line.substr(i, j - i));
      i = j;
    }
    if (!st.words.empty()) out.push_back(std::move(st));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline double parse_decimal(const std::string& word, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc{} || ptr != word.data() + word.size())
    throw ParseError("invalid decimal '" + word + "'", line);
  if (!std::isfinite(v)) throw ParseError("constant must be finite: '" + word + "'", line);
  return v;
}

inline std::uint8_t parse_truth_table(const std::string& bits, std::size_t line) {
  if (bits.size() != 4) throw ParseError("truth table needs 4 bits, got '" + bits + "'", line);
  std::uint8_t t = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (bits[i] == '1') t |= static_cast<std::uint8_t>(1u << i);
    else if (bits[i] != '0') throw ParseError("truth table bits must be 0 or 1: '" + bits + "'", line);
  }
  return t;
}

inline std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// Parses circuit text. With CircuitKind::Auto, `gate` statements select a
// boolean circuit and const/add/mul an arithmetic one; text with only inputs
// parses as arithmetic.
inline AnyCircuit parse_circuit(std::string_view text, CircuitKind kind = CircuitKind::Auto) {
  const auto stmts = detail::tokenize(text);

  // First pass: statement shapes, kind, and where each name is defined.
  std::unordered_map<std::string, std::size_t> defined_at;  // name -> statement index
  std::size_t output_stmt = stmts.size();
  bool has_arith = false, has_bool = false;
  std::size_t kind_line = 0;
  for (std::size_t s = 0; s < stmts.size(); ++s) {
    const auto& st = stmts[s];
    const std::string& op = st.words[0];
    std::size_t want = 0;
    if (op == "input" || op == "output") want = 2;
    else if (op == "const") want = 3;
    else if (op == "add" || op == "mul") want = 4;
    else if (op == "gate") want = (st.words.size() >= 3 && st.words[2] == "tt") ? 6 : 5;
    else throw ParseError("unknown statement '" + op + "'", st.line);
    if (st.words.size() != want)
      throw ParseError("'" + op + "' expects " + std::to_string(want - 1) + " operands", st.line);

    if (op == "output") {
      if (output_stmt != stmts.size()) throw ParseError("multiple output statements", st.line);
      output_stmt = s;
      continue;
    }
    if (op == "gate") {
      has_bool = true;
      if (!kind_line) kind_line = st.line;
    } else if (op != "input") {
      has_arith = true;
      if (!kind_line) kind_line = st.line;
    }
    if (has_arith && has_bool)
      throw ParseError("mixes boolean gates with arithmetic nodes", st.line);
    auto [it, fresh] = defined_at.emplace(st.words[1], s);
    if (!fresh)
      throw ParseError("duplicate node name '" + st.words[1] + "' (first defined on line " +
                           std::to_string(stmts[it->second].line) + ")",
                       st.line);
  }
  if (output_stmt == stmts.size()) throw ParseError("missing output statement", 0);

  if (kind == CircuitKind::Auto) kind = has_bool ? CircuitKind::Bool : CircuitKind::Arith;
  if (kind == CircuitKind::Arith && has_bool)
    throw ParseError("boolean gate in an arithmetic circuit", kind_line);
  if (kind == CircuitKind::Bool && has_arith)
    throw ParseError("arithmetic node in a boolean circuit", kind_line);

  // Second pass: build nodes.
  std::unordered_map<std::string, NodeIndex> index;
  std::vector<std::string> names;
  std::uint32_t inputs = 0;
  std::vector<ArithNode> anodes;
  std::vector<BoolNode> bnodes;

  auto resolve = [&](const std::string& name, std::size_t s) -> NodeIndex {
    if (auto it = index.find(name); it != index.end()) return it->second;
    if (auto it = defined_at.find(name); it != defined_at.end() && it->second >= s)
      throw ParseError("forward reference to '" + name + "' (defined on line " +
                           std::to_string(stmts[it->second].line) + ")",
                       stmts[s].line);
    throw ParseError("unknown node '" + name + "'", stmts[s].line);
  };

  for (std::size_t s = 0; s < stmts.size(); ++s) {
    if (s == output_stmt) continue;
    const auto& st = stmts[s];
    const auto& w = st.words;
    const std::string& op = w[0];
    if (op == "input") {
      ++inputs;
      if (kind == CircuitKind::Arith) anodes.push_back(ArithNode::input(inputs));
      else bnodes.push_back(BoolNode::input(inputs));
    } else if (op == "const") {
      anodes.push_back(ArithNode::constant(detail::parse_decimal(w[2], st.line)));
    } else if (op == "add" || op == "mul") {
      const NodeIndex a = resolve(w[2], s), b = resolve(w[3], s);
      anodes.push_back(op == "add" ? ArithNode::add(a, b) : ArithNode::mul(a, b));
    } else {  // gate
      std::uint8_t table;
      std::size_t first = 3;
      if (w[2] == "tt") {
        table = detail::parse_truth_table(w[3], st.line);
        first = 4;
      } else if (auto t = gates::from_name(w[2])) {
        table = *t;
      } else {
        throw ParseError("unknown gate '" + w[2] + "'", st.line);
      }
      const NodeIndex a = resolve(w[first], s), b = resolve(w[first + 1], s);
      bnodes.push_back(BoolNode::gate(table, a, b));
    }
    index.emplace(w[1], static_cast<NodeIndex>(names.size()));
    names.push_back(w[1]);
  }

  const auto& out = stmts[output_stmt];
  auto it = index.find(out.words[1]);
  if (it == index.end()) throw ParseError("unknown output node '" + out.words[1] + "'", out.line);

  if (kind == CircuitKind::Arith) {
    if (anodes.empty()) throw ParseError("circuit has no nodes", 0);
    return ArithCircuit(std::move(anodes), inputs, it->second, std::move(names));
  }
  if (bnodes.empty()) throw ParseError("circuit has no nodes", 0);
  return BoolCircuit(std::move(bnodes), inputs, it->second, std::move(names));
}

inline ArithCircuit parse_arith(std::string_view text) {
  return std::get<ArithCircuit>(parse_circuit(text, CircuitKind::Arith));
}

inline BoolCircuit parse_bool(std::string_view text) {
  return std::get<BoolCircuit>(parse_circuit(text, CircuitKind::Bool));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reparsing relabels inputs in node order, so circuits whose input labels
// already increase with node index round-trip exactly.
inline std::string pretty_print(const ArithCircuit& c) {
  std::string out;
  for (NodeIndex k = 0; k < c.size(); ++k) {
    const ArithNode& nd = c.node(k);
    const std::string name = c.name_of(k);
    switch (nd.op) {
      case ArithOp::Input: out += "input " + name; break;
      case ArithOp::Const: out += "const " + name + " " + detail::format_decimal(nd.value); break;
      case ArithOp::Add: out += "add " + name + " " + c.name_of(nd.a) + " " + c.name_of(nd.b); break;
      case ArithOp::Mul: out += "mul " + name + " " + c.name_of(nd.a) + " " + c.name_of(nd.b); break;
    }
    out += '\n';
  }
  out += "output " + c.name_of(c.output()) + "\n";
  return out;
}

inline std::string pretty_print(const BoolCircuit& c) {
  std::string out;
  for (NodeIndex k = 0; k < c.size(); ++k) {
    const BoolNode& nd = c.node(k);
    const std::string name = c.name_of(k);
    if (nd.op == BoolOp::Input) {
      out += "input " + name;
    } else {
      out += "gate " + name + " ";
      if (auto gname = gates::name_of(nd.table)) {
        out += std::string(*gname);
      } else {
        out += "tt ";
        for (int i = 0; i < 4; ++i) out += ((nd.table >> i) & 1) ? '1' : '0';
      }
      out += " " + c.name_of(nd.a) + " " + c.name_of(nd.b);
    }
    out += '\n';
  }
  out += "output " + c.name_of(c.output()) + "\n";
  return out;
}

inline std::string pretty_print(const AnyCircuit& c) {
  return std::visit([](const auto& x) { return pretty_print(x); }, c);
}

}  // namespace heuristic
