#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heuristic {

// Malformed circuit text or argument files. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A non-finite value appeared while evaluating or propagating through a node.
// `node` is the 0-based node index.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& msg, std::size_t node)
      : std::runtime_error(msg + " at node " + std::to_string(node + 1)), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

// The requested exact computation exceeds a configured size cap.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heuristic
