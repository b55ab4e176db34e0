#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "heuristic/argument_set.hpp"
#include "heuristic/circuit.hpp"
#include "heuristic/dsl.hpp"
#include "heuristic/random_circuit.hpp"

using namespace heuristic;

namespace {

// Reference interpreter that reads gates by name rather than by truth table.
bool interpret(const BoolCircuit& c, const std::vector<bool>& bits) {
  std::vector<int> v(c.size(), -1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const BoolNode& nd = c.node(static_cast<NodeIndex>(k));
    if (nd.op == BoolOp::Input) {
      v[k] = bits[nd.label - 1];
      continue;
    }
    EXPECT_NE(v[nd.a], -1);
    EXPECT_NE(v[nd.b], -1);
    const bool a = v[nd.a], b = v[nd.b];
    const std::string name(gates::name_of(nd.table).value_or("?"));
    bool r;
    if (name == "AND") r = a && b;
    else if (name == "OR") r = a || b;
    else if (name == "XOR") r = a != b;
    else if (name == "NAND") r = !(a && b);
    else if (name == "NOR") r = !(a || b);
    else if (name == "XNOR") r = a == b;
    else r = (nd.table >> (a * 2 + b)) & 1;
    v[k] = r;
  }
  return v[c.output()];
}

int parse_error_line(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

std::string parse_error_message(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Dsl, XorTreeShape) {
  const auto c = fixtures::xor_tree();
  EXPECT_EQ(c.input_count(), 3u);
  EXPECT_EQ(c.size(), 9u);
  EXPECT_EQ(c.output(), 8u);
  EXPECT_EQ(c.node(8).table, gates::kXor);
  EXPECT_TRUE(std::holds_alternative<BoolCircuit>(parse_circuit(fixtures::kXorTree)));
}

TEST(Dsl, IdentityCircuit) {
  const auto c = parse_arith("input z1\noutput z1\n");
  EXPECT_EQ(c.input_count(), 1u);
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.output(), 0u);
  EXPECT_EQ(eval_arith(c, {2.5}), 2.5);
  const auto b = parse_bool("input z1\noutput z1\n");
  EXPECT_TRUE(eval_bool(b, {true}));
}

TEST(Dsl, Errors) {
  EXPECT_EQ(parse_error_line("input a\nadd s a b\ninput b\noutput s\n"), 2);
  EXPECT_NE(parse_error_message("input a\nadd s a b\ninput b\noutput s\n").find("forward reference"),
            std::string::npos);
  EXPECT_NE(parse_error_message("input a\nadd s a q\noutput s\n").find("unknown node"), std::string::npos);
  EXPECT_EQ(parse_error_line("input a\ninput a\noutput a\n"), 2);
  EXPECT_NE(parse_error_message("input a\ninput a\noutput a\n").find("duplicate"), std::string::npos);
  EXPECT_EQ(parse_error_line("input a\ninput b\ngate g FOO a b\noutput g\n"), 3);
  EXPECT_NE(parse_error_message("input a\ninput b\ngate g FOO a b\noutput g\n").find("unknown gate"),
            std::string::npos);
  EXPECT_NE(parse_error_message("input a\n").find("missing output"), std::string::npos);
  EXPECT_EQ(parse_error_line("input a\noutput a\noutput a\n"), 3);
  EXPECT_EQ(parse_error_line("input a\nconst c nan\noutput a\n"), 2);
  EXPECT_EQ(parse_error_line("input a\nconst c 1x\noutput a\n"), 2);
  EXPECT_EQ(parse_error_line("input a\nadd s a\noutput s\n"), 2);
  EXPECT_EQ(parse_error_line("input a\ninput b\ngate g AND a b\nmul m a b\noutput m\n"), 4);
  EXPECT_EQ(parse_error_line("frobnicate x\n"), 1);
  EXPECT_EQ(parse_error_line("input a\ngate g tt 01 a a\noutput g\n"), 2);
}

TEST(Dsl, CommentsAndTruthTables) {
  const auto c = parse_bool(
      "# header\ninput a   # first\n\ninput b\ngate g tt 0110 a b\ngate h tt 1011 a b\noutput h\n");
  EXPECT_EQ(c.node(2).table, gates::kXor);
  // 1011: true on 00, 10, 11.
  EXPECT_TRUE(eval_bool(c, {false, false}));
  EXPECT_FALSE(eval_bool(c, {false, true}));
  EXPECT_TRUE(eval_bool(c, {true, false}));
  EXPECT_TRUE(eval_bool(c, {true, true}));
  EXPECT_NE(pretty_print(c).find("tt 1011"), std::string::npos);
}

TEST(Dsl, RoundTrip) {
  for (const std::string& t : {fixtures::kXorTree, fixtures::kTwoProducts}) {
    const AnyCircuit c = parse_circuit(t);
    const AnyCircuit again = parse_circuit(pretty_print(c));
    EXPECT_EQ(c, again);
  }
  for (std::uint64_t s = 0; s < 50; ++s) {
    RandomArithSpec as{4, 30, 2};
    const auto a = random_arith_circuit(as, Seed{s});
    EXPECT_EQ(parse_arith(pretty_print(a)), a);
    RandomBoolSpec bs{4, 30};
    bs.gate_mix.push_back(0b0100);
    const auto b = random_bool_circuit(bs, Seed{s});
    EXPECT_EQ(parse_bool(pretty_print(b)), b);
  }
}

TEST(Dsl, ConstantPrecisionSurvivesRoundTrip) {
  const auto c = parse_arith("const c 0.1\nconst d -1e-300\nadd s c d\noutput s\n");
  const auto again = parse_arith(pretty_print(c));
  EXPECT_EQ(again.node(0).value, 0.1);
  EXPECT_EQ(again.node(1).value, -1e-300);
}

TEST(EvalBool, XorTree) {
  const auto c = fixtures::xor_tree();
  EXPECT_FALSE(eval_bool(c, {true, true, false}));
  EXPECT_TRUE(eval_bool(c, {true, false, false}));
  int count = 0;
  for (int x = 0; x < 8; ++x) {
    const bool v = eval_bool(c, {bool(x & 4), bool(x & 2), bool(x & 1)});
    count += v;
    if (v) {
      EXPECT_TRUE(x == 4 || x == 1) << x;
    }
  }
  EXPECT_EQ(count, 2);
}

TEST(EvalBool, SingleAnd) {
  const auto c = parse_bool("input a\ninput b\ngate g AND a b\noutput g\n");
  EXPECT_TRUE(eval_bool(c, {true, true}));
  EXPECT_FALSE(eval_bool(c, {true, false}));
}

TEST(EvalBool, LengthMismatch) {
  EXPECT_THROW(eval_bool(fixtures::xor_tree(), {true, false}), std::invalid_argument);
}

TEST(EvalBool, AgreesWithInterpreter) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    RandomBoolSpec spec{1 + static_cast<std::uint32_t>(s % 10), 25};
    const auto c = random_bool_circuit(spec, Seed{100 + s});
    const std::uint32_t n = c.input_count();
    std::vector<std::uint64_t> lanes(n), scratch;
    for (std::uint64_t x = 0; x < (1u << n); ++x) {
      std::vector<bool> bits(n);
      for (std::uint32_t i = 0; i < n; ++i) bits[i] = (x >> i) & 1;
      const bool expect = interpret(c, bits);
      ASSERT_EQ(eval_bool(c, bits), expect);
      if (x % 64 == 0) std::fill(lanes.begin(), lanes.end(), 0);
      for (std::uint32_t i = 0; i < n; ++i)
        if (bits[i]) lanes[i] |= std::uint64_t{1} << (x % 64);
      if (x % 64 == 63 || x + 1 == (1u << n)) {
        const std::uint64_t out = eval_bool_lanes(c, lanes, scratch);
        for (std::uint64_t y = x - x % 64; y <= x; ++y) {
          std::vector<bool> b2(n);
          for (std::uint32_t i = 0; i < n; ++i) b2[i] = (y >> i) & 1;
          ASSERT_EQ(bool((out >> (y % 64)) & 1), interpret(c, b2));
        }
      }
    }
  }
}

TEST(EvalArith, TwoProducts) {
  const auto c = fixtures::two_products();
  EXPECT_EQ(eval_arith(c, {0.0, 0.0}), 1.0);
  // (1 + 2)(1 + 3) + (1 + 3)(2 + 3) = 12 + 20
  EXPECT_EQ(eval_arith(c, {2.0, 3.0}), 32.0);
}

TEST(EvalArith, ZeroConstants) {
  const auto c = parse_arith("const c 0\ninput a\ninput b\nmul m a c\nadd s m b\nmul t s c\noutput t\n");
  EXPECT_EQ(eval_arith(c, {0.0, 0.0}), 0.0);
}

TEST(EvalArith, ConstantSquare) {
  EXPECT_EQ(eval_arith(parse_arith("const c 2\nmul m c c\noutput m\n"), std::span<const double>{}), 4.0);
}

TEST(EvalArith, OverflowNamesNode) {
  std::string text = "const c 1e200\n";
  text += "mul m c c\nadd s c c\noutput s\n";
  try {
    eval_arith(parse_arith(text), std::span<const double>{});
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_EQ(e.node(), 1u);
    EXPECT_NE(std::string(e.what()).find("node 2"), std::string::npos);
  }
}

TEST(EvalArith, LengthMismatch) {
  EXPECT_THROW(eval_arith(fixtures::two_products(), {1.0}), std::invalid_argument);
}

TEST(Circuit, InvariantsRejected) {
  EXPECT_THROW(ArithCircuit({ArithNode::add(0, 0)}, 0, 0), std::invalid_argument);
  EXPECT_THROW(ArithCircuit({ArithNode::input(1), ArithNode::input(1)}, 1, 0), std::invalid_argument);
  EXPECT_THROW(ArithCircuit({ArithNode::input(2)}, 2, 0), std::invalid_argument);
  EXPECT_THROW(ArithCircuit({ArithNode::input(1)}, 1, 3), std::invalid_argument);
  EXPECT_THROW(ArithCircuit({ArithNode::constant(INFINITY)}, 0, 0), std::invalid_argument);
  EXPECT_THROW(BoolCircuit({BoolNode::input(1), BoolNode::gate(gates::kAnd, 0, 2)}, 1, 1),
               std::invalid_argument);
}

TEST(ArgumentSet, Canonicalize) {
  const auto s = canonicalize({{2, 5}, {5, 2}}, 6);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.tuples()[0], (Tuple{5, 2}));
  EXPECT_TRUE(canonicalize({}, 3).empty());
  const auto t = canonicalize({{1}, {3, 1}, {3, 1, 1}}, 4);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_THROW(canonicalize({{7}}, 4), std::out_of_range);
  EXPECT_THROW(ArgumentSet({Tuple{}}), std::invalid_argument);
}

TEST(ArgumentSet, IdempotentAndOrderInsensitive) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Tuple> raw;
    for (int i = 0; i < 20; ++i) {
      Tuple t(1 + gen() % 4);
      for (auto& v : t) v = gen() % 8;
      raw.push_back(t);
    }
    const ArgumentSet a(raw);
    EXPECT_EQ(ArgumentSet(a.tuples()), a);
    for (auto& t : raw) std::shuffle(t.begin(), t.end(), gen);
    std::shuffle(raw.begin(), raw.end(), gen);
    EXPECT_EQ(ArgumentSet(raw), a);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    for (const auto& t : a) EXPECT_TRUE(std::is_sorted(t.begin(), t.end(), std::greater<>()));
  }
}

TEST(ArgumentSet, UnionIsCanonical) {
  const ArgumentSet a{{1, 3}, {2}};
  const ArgumentSet b{{3, 1}, {4, 4}};
  const ArgumentSet u = a | b;
  EXPECT_EQ(u, ArgumentSet({{3, 1}, {2}, {4, 4}}));
  EXPECT_EQ(ArgumentSet(u.tuples()), u);
}

TEST(ArgumentSet, JsonRoundTrip) {
  const ArgumentSet a{{1, 3}, {2}, {0, 0, 4}};
  const auto back = argument_set_from_json(to_json(a).dump(), 5);
  EXPECT_EQ(back, a);
  EXPECT_EQ(to_json(a)["tuples"][0], nlohmann::json::array({3}));
  EXPECT_THROW(argument_set_from_json(R"({"tuples": [[0]]})", 5), ParseError);
  EXPECT_THROW(argument_set_from_json(R"({"tuples": [[6]]})", 5), ParseError);
  EXPECT_THROW(argument_set_from_json(R"({"pairs": []})", 5), ParseError);
  EXPECT_THROW(argument_set_from_json("{", 5), ParseError);
}

TEST(ArgumentSet, AllTuplesCounts) {
  // Multisets of size 1..k from m elements: sum_j C(m + j - 1, j).
  EXPECT_EQ(all_tuples(4, 1).size(), 4u);
  EXPECT_EQ(all_tuples(4, 2).size(), 4u + 10u);
  EXPECT_EQ(all_tuples(4, 3).size(), 4u + 10u + 20u);
  EXPECT_EQ(all_pairs(5).size(), 15u);
}

TEST(RandomCircuit, NoGatesOutputsInput) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto c = random_arith_circuit({3, 0, 1}, Seed{s});
    EXPECT_EQ(c.node(c.output()).op, ArithOp::Input);
  }
}

TEST(RandomCircuit, Deterministic) {
  RandomArithSpec spec{8, 50, 3};
  EXPECT_EQ(random_arith_circuit(spec, Seed{7}), random_arith_circuit(spec, Seed{7}));
  EXPECT_FALSE(random_arith_circuit(spec, Seed{7}) == random_arith_circuit(spec, Seed{8}));
  RandomBoolSpec bs{8, 50};
  EXPECT_EQ(random_bool_circuit(bs, Seed{7}), random_bool_circuit(bs, Seed{7}));
}

TEST(RandomCircuit, InvariantsHold) {
  const auto c = random_arith_circuit({8, 50, 2}, Seed{7});
  EXPECT_EQ(c.size(), 60u);
  // The constructor validates; re-validating a copy must not throw.
  EXPECT_NO_THROW(ArithCircuit(c.nodes(), c.input_count(), c.output()));
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c.node(static_cast<NodeIndex>(k)).is_gate()) {
      EXPECT_LT(c.node(static_cast<NodeIndex>(k)).a, k);
      EXPECT_LT(c.node(static_cast<NodeIndex>(k)).b, k);
    }
}

TEST(RandomCircuit, DegreeCap) {
  RandomArithSpec spec{3, 40, 1};
  spec.max_degree = 4;
  spec.mul_fraction = 0.9;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto d = node_degrees(random_arith_circuit(spec, Seed{s}));
    EXPECT_LE(*std::max_element(d.begin(), d.end()), 4u);
  }
}
