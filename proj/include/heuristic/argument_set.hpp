#pragma once

// Sets of node-index tuples naming the moments an estimator tracks.
// Indices are 0-based in memory and 1-based in files.

#include <algorithm>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "heuristic/circuit.hpp"
#include "heuristic/errors.hpp"

namespace heuristic {

using Tuple = std::vector<NodeIndex>;

// Tuples are stored sorted nonincreasing, deduplicated, in lexicographic order.
class ArgumentSet {
 public:
  ArgumentSet() = default;

  explicit ArgumentSet(std::vector<Tuple> raw) : tuples_(std::move(raw)) {
    for (auto& t : tuples_) {
      if (t.empty()) throw std::invalid_argument("argument tuples must be nonempty");
      std::sort(t.begin(), t.end(), std::greater<>());
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  }

  ArgumentSet(std::initializer_list<Tuple> raw) : ArgumentSet(std::vector<Tuple>(raw)) {}

  const std::vector<Tuple>& tuples() const noexcept { return tuples_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }
  auto begin() const noexcept { return tuples_.begin(); }
  auto end() const noexcept { return tuples_.end(); }

  // `t` must already be canonical.
  bool contains(const Tuple& t) const { return std::binary_search(tuples_.begin(), tuples_.end(), t); }

  std::size_t max_order() const noexcept {
    std::size_t m = 0;
    for (const auto& t : tuples_) m = std::max(m, t.size());
    return m;
  }

  void check_range(std::size_t node_count) const {
    for (const auto& t : tuples_)
      if (t.front() >= node_count)
        throw std::out_of_range("argument tuple references node " + std::to_string(t.front() + 1) +
                                " of a " + std::to_string(node_count) + "-node circuit");
  }

  friend ArgumentSet operator|(const ArgumentSet& x, const ArgumentSet& y) {
    ArgumentSet r;
    std::set_union(x.tuples_.begin(), x.tuples_.end(), y.tuples_.begin(), y.tuples_.end(),
                   std::back_inserter(r.tuples_));
    return r;
  }

  friend bool operator==(const ArgumentSet&, const ArgumentSet&) = default;

 private:
  std::vector<Tuple> tuples_;
};

inline ArgumentSet canonicalize(std::vector<Tuple> raw, std::size_t node_count) {
  ArgumentSet s(std::move(raw));
  s.check_range(node_count);
  return s;
}

inline ArgumentSet union_of(std::span<const ArgumentSet> sets) {
  ArgumentSet r;
  for (const auto& s : sets) r = r | s;
  return r;
}

inline std::string tuple_key(const Tuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i] + 1);
  }
  return s;
}

inline nlohmann::json to_json(const ArgumentSet& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : s) {
    nlohmann::json row = nlohmann::json::array();
    for (NodeIndex k : t) row.push_back(k + 1);
    arr.push_back(std::move(row));
  }
  return {{"tuples", std::move(arr)}};
}

inline ArgumentSet argument_set_from_json(std::string_view text, std::size_t node_count) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("argument file: ") + e.what(), 0);
  }
  if (!j.is_object() || !j.contains("tuples") || !j["tuples"].is_array())
    throw ParseError("argument file must be an object with a \"tuples\" array", 0);
  std::vector<Tuple> raw;
  for (const auto& row : j["tuples"]) {
    if (!row.is_array() || row.empty()) throw ParseError("each tuple must be a nonempty array", 0);
    Tuple t;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError("tuple entries must be integers", 0);
      const auto k = v.get<long long>();
      if (k < 1 || static_cast<std::size_t>(k) > node_count)
        throw ParseError("node index " + std::to_string(k) + " out of range 1.." +
                             std::to_string(node_count),
                         0);
      t.push_back(static_cast<NodeIndex>(k - 1));
    }
    raw.push_back(std::move(t));
  }
  return ArgumentSet(std::move(raw));
}

// Every pair (j, k) with j >= k, including j == k.
inline ArgumentSet all_pairs(std::size_t node_count) {
  std::vector<Tuple> raw;
  for (NodeIndex j = 0; j < node_count; ++j)
    for (NodeIndex k = 0; k <= j; ++k) raw.push_back({j, k});
  return ArgumentSet(std::move(raw));
}

// Every multiset of nodes with size 1..max_order.
inline ArgumentSet all_tuples(std::size_t node_count, std::size_t max_order) {
  std::vector<Tuple> raw;
  Tuple cur;
  std::function<void(NodeIndex)> rec = [&](NodeIndex top) {
    if (!cur.empty()) raw.push_back(cur);
    if (cur.size() == max_order) return;
    for (NodeIndex k = 0; k <= top && k < node_count; ++k) {
      cur.push_back(k);
      rec(k);
      cur.pop_back();
    }
  };
  if (node_count > 0) rec(static_cast<NodeIndex>(node_count - 1));
  return ArgumentSet(std::move(raw));
}

}  // namespace heuristic
