#pragma once

// Forward moment propagation on circuits: boolean mean propagation, and mean,
// covariance, and sparse covariance propagation for arithmetic circuits with
// independent standard normal inputs.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "heuristic/argument_set.hpp"
#include "heuristic/circuit.hpp"
#include "heuristic/errors.hpp"

namespace heuristic {

// Per-run moment table. Means are first cumulants; `cumulants` holds the
// tracked higher-order entries keyed by canonical tuple.
struct MomentState {
  std::map<NodeIndex, double> means;
  std::map<Tuple, double> cumulants;
  ArgumentSet tracked;

  // {"k": mean, "i,j": cumulant, ...} with 1-based indices.
  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : means) j[std::to_string(k + 1)] = v;
    for (const auto& [t, v] : cumulants) j[tuple_key(t)] = v;
    return j;
  }
};

struct Estimate {
  double value = 0.0;
  std::string method;
  std::optional<MomentState> state;
};

namespace detail {

inline void check_finite(double v, std::size_t node) {
  if (!std::isfinite(v)) throw NumericError("non-finite estimate", node);
}

// Covariance storage where every pair is tracked.
class DenseCov {
 public:
  explicit DenseCov(std::size_t m) : s_(m * (m + 1) / 2, 0.0) {}
  double get(NodeIndex x, NodeIndex y) const { return s_[idx(x, y)]; }
  void set(NodeIndex x, NodeIndex y, double v) { s_[idx(x, y)] = v; }
  template <class F>
  void for_partners(NodeIndex k, F f) const {
    for (NodeIndex j = 0; j < k; ++j) f(j);
  }
  bool self(NodeIndex) const { return true; }

 private:
  std::size_t idx(NodeIndex x, NodeIndex y) const {
    if (x < y) std::swap(x, y);
    return std::size_t{x} * (x + 1) / 2 + y;
  }
  std::vector<double> s_;
};

// Covariance storage restricted to a set of pairs; other pairs read as 0.
class SparseCov {
 public:
  SparseCov(std::size_t m, const ArgumentSet& pairs) : partners_(m), self_(m, false) {
    for (const auto& t : pairs) {
      if (t.size() == 1) continue;
      if (t.size() != 2) throw std::invalid_argument("sparse covariance arguments must be pairs");
      if (t[0] == t[1]) self_[t[0]] = true;
      else partners_[t[0]].push_back(t[1]);
    }
  }
  double get(NodeIndex x, NodeIndex y) const {
    auto it = s_.find(key(x, y));
    return it == s_.end() ? 0.0 : it->second;
  }
  void set(NodeIndex x, NodeIndex y, double v) { s_[key(x, y)] = v; }
  template <class F>
  void for_partners(NodeIndex k, F f) const {
    for (NodeIndex j : partners_[k]) f(j);
  }
  bool self(NodeIndex k) const { return self_[k]; }

 private:
  static std::uint64_t key(NodeIndex x, NodeIndex y) {
    if (x < y) std::swap(x, y);
    return (std::uint64_t{x} << 32) | y;
  }
  std::vector<std::vector<NodeIndex>> partners_;
  std::vector<bool> self_;
  std::unordered_map<std::uint64_t, double> s_;
};

template <class Store>
std::vector<double> propagate_covariance(const ArithCircuit& c, Store& s) {
  std::vector<double> mu(c.size());
  for (NodeIndex k = 0; k < c.size(); ++k) {
    const ArithNode& nd = c.node(k);
    switch (nd.op) {
      case ArithOp::Input:
        mu[k] = 0.0;
        s.for_partners(k, [&](NodeIndex j) { s.set(k, j, 0.0); });
        if (s.self(k)) s.set(k, k, 1.0);
        break;
      case ArithOp::Const:
        mu[k] = nd.value;
        s.for_partners(k, [&](NodeIndex j) { s.set(k, j, 0.0); });
        if (s.self(k)) s.set(k, k, 0.0);
        break;
      case ArithOp::Add: {
        const NodeIndex a = nd.a, b = nd.b;
        mu[k] = mu[a] + mu[b];
        s.for_partners(k, [&](NodeIndex j) { s.set(k, j, s.get(j, a) + s.get(j, b)); });
        if (s.self(k)) s.set(k, k, s.get(a, a) + s.get(b, b) + 2.0 * s.get(a, b));
        break;
      }
      case ArithOp::Mul: {
        const NodeIndex a = nd.a, b = nd.b;
        const double ma = mu[a], mb = mu[b];
        const double sab = s.get(a, b), saa = s.get(a, a), sbb = s.get(b, b);
        mu[k] = ma * mb + sab;
        s.for_partners(k, [&](NodeIndex j) { s.set(k, j, s.get(j, a) * mb + s.get(j, b) * ma); });
        if (s.self(k))
          s.set(k, k, sab * sab + 2.0 * sab * ma * mb + saa * sbb + saa * mb * mb + sbb * ma * ma);
        break;
      }
    }
    check_finite(mu[k], k);
    s.for_partners(k, [&](NodeIndex j) { check_finite(s.get(k, j), k); });
    if (s.self(k)) check_finite(s.get(k, k), k);
  }
  return mu;
}

}  // namespace detail

// Probability that each gate outputs 1, treating gate inputs as independent
// and circuit inputs as fair coins.
inline std::vector<double> bool_node_probabilities(const BoolCircuit& c) {
  std::vector<double> p(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const BoolNode& nd = c.nodes()[k];
    if (nd.op == BoolOp::Input) {
      p[k] = 0.5;
      continue;
    }
    const double pa = p[nd.a], pb = p[nd.b];
    const double w[4] = {(1 - pa) * (1 - pb), (1 - pa) * pb, pa * (1 - pb), pa * pb};
    double v = 0.0;
    for (int i = 0; i < 4; ++i)
      if ((nd.table >> i) & 1) v += w[i];
    p[k] = v;
  }
  return p;
}

inline Estimate mean_prop_bool(const BoolCircuit& c) {
  return {bool_node_probabilities(c)[c.output()], "mean", std::nullopt};
}

inline std::vector<double> arith_node_means(const ArithCircuit& c) {
  std::vector<double> mu(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const ArithNode& nd = c.nodes()[k];
    switch (nd.op) {
      case ArithOp::Input: mu[k] = 0.0; break;
      case ArithOp::Const: mu[k] = nd.value; break;
      case ArithOp::Add: mu[k] = mu[nd.a] + mu[nd.b]; break;
      case ArithOp::Mul: mu[k] = mu[nd.a] * mu[nd.b]; break;
    }
    detail::check_finite(mu[k], k);
  }
  return mu;
}

inline Estimate mean_prop_arith(const ArithCircuit& c) {
  return {arith_node_means(c)[c.output()], "mean", std::nullopt};
}

// Full covariance propagation. `keep_state` stores every mean and pair.
inline Estimate cov_prop(const ArithCircuit& c, bool keep_state = false) {
  detail::DenseCov s(c.size());
  const auto mu = detail::propagate_covariance(c, s);
  Estimate e{mu[c.output()], "cov", std::nullopt};
  if (keep_state) {
    MomentState st;
    st.tracked = all_pairs(c.size());
    for (NodeIndex k = 0; k < c.size(); ++k) st.means[k] = mu[k];
    for (const auto& t : st.tracked) st.cumulants[t] = s.get(t[0], t[1]);
    e.state = std::move(st);
  }
  return e;
}

// Covariance propagation tracking only the supplied pairs (singletons are
// accepted and ignored; means are always tracked).
inline Estimate sparse_cov_prop(const ArithCircuit& c, const ArgumentSet& pairs) {
  pairs.check_range(c.size());
  detail::SparseCov s(c.size(), pairs);
  const auto mu = detail::propagate_covariance(c, s);
  MomentState st;
  st.tracked = pairs;
  for (NodeIndex k = 0; k < c.size(); ++k) st.means[k] = mu[k];
  for (const auto& t : pairs)
    if (t.size() == 2) st.cumulants[t] = s.get(t[0], t[1]);
  return {mu[c.output()], "sparse-cov", std::move(st)};
}

inline Estimate sparse_cov_prop(const ArithCircuit& c, std::span<const ArgumentSet> sets) {
  return sparse_cov_prop(c, union_of(sets));
}

}  // namespace heuristic
