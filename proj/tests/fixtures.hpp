#pragma once

#include <string>

#include "heuristic/dsl.hpp"

namespace fixtures {

inline const std::string kXorTree = R"(
input z1
input z2
input z3
gate or12 OR z1 z2
gate xor13 XOR z1 z3
gate or23 OR z2 z3
gate left AND or12 xor13
gate right AND xor13 or23
gate out XOR left right
output out
)";

// (1 + z1)(1 + z2) + (1 + z2)(z1 + z2)
inline const std::string kTwoProducts = R"(
const one 1
input z1
input z2
add s1 one z1
add s2 one z2
add s3 z1 z2
mul left s1 s2
mul right s2 s3
add out left right
output out
)";

inline heuristic::BoolCircuit xor_tree() { return heuristic::parse_bool(kXorTree); }
inline heuristic::ArithCircuit two_products() { return heuristic::parse_arith(kTwoProducts); }

}  // namespace fixtures
