#pragma once

// Joint cumulants: conversion to and from moments through set partitions, and
// cumulant propagation over arithmetic circuits.

#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "heuristic/argument_set.hpp"
#include "heuristic/circuit.hpp"
#include "heuristic/errors.hpp"
#include "heuristic/propagation.hpp"

namespace heuristic {

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL ^ t.size();
    for (NodeIndex v : t) h = (h ^ v) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Keyed by canonical (nonincreasing) tuples; missing entries read as 0.
using CumulantTable = std::map<Tuple, double>;
using MomentTable = std::map<Tuple, double>;

inline Tuple canonical(Tuple t) {
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

// Calls f(blocks) for every set partition of {0, ..., n-1}.
template <class F>
void for_each_set_partition(std::size_t n, F f) {
  std::vector<std::size_t> block(n, 0);
  std::vector<std::vector<std::size_t>> blocks;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      blocks.assign(used, {});
      for (std::size_t j = 0; j < n; ++j) blocks[block[j]].push_back(j);
      f(static_cast<const std::vector<std::vector<std::size_t>>&>(blocks));
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      block[i] = b;
      rec(i + 1, used + (b == used ? 1 : 0));
    }
  };
  rec(0, 0);
}

// E[X_{v1} ... X_{vn}] = sum over set partitions of the product of block cumulants.
inline double cumulants_to_moment(const Tuple& vars, const CumulantTable& kappa) {
  if (vars.empty()) throw std::invalid_argument("moment of an empty tuple");
  double total = 0.0;
  for_each_set_partition(vars.size(), [&](const auto& blocks) {
    double prod = 1.0;
    for (const auto& blk : blocks) {
      Tuple t;
      for (std::size_t i : blk) t.push_back(vars[i]);
      auto it = kappa.find(canonical(std::move(t)));
      if (it == kappa.end()) {
        prod = 0.0;
        break;
      }
      prod *= it->second;
    }
    total += prod;
  });
  return total;
}

namespace detail {

inline double moment_to_cumulant_rec(const Tuple& vars, const MomentTable& moments,
                                     std::map<Tuple, double>& memo) {
  if (auto it = memo.find(vars); it != memo.end()) return it->second;
  auto mit = moments.find(vars);
  double k = mit == moments.end() ? 0.0 : mit->second;
  for_each_set_partition(vars.size(), [&](const auto& blocks) {
    if (blocks.size() < 2) return;
    double prod = 1.0;
    for (const auto& blk : blocks) {
      Tuple t;
      for (std::size_t i : blk) t.push_back(vars[i]);
      prod *= moment_to_cumulant_rec(canonical(std::move(t)), moments, memo);
      if (prod == 0.0) break;
    }
    k -= prod;
  });
  memo.emplace(vars, k);
  return k;
}

}  // namespace detail

// Inverts the moment-partition identity recursively.
inline double moment_to_cumulant(const Tuple& vars, const MomentTable& moments) {
  if (vars.empty()) throw std::invalid_argument("cumulant of an empty tuple");
  std::map<Tuple, double> memo;
  return detail::moment_to_cumulant_rec(canonical(vars), moments, memo);
}

struct CumulantOptions {
  std::size_t max_order = 6;
  // Evaluate the product rule by enumerating every split of the remaining
  // tuple instead of walking tracked tuples.
  bool enumerate_splits = false;
};

namespace detail {

class CumulantPropagator {
 public:
  CumulantPropagator(const ArithCircuit& c, const ArgumentSet& args, const CumulantOptions& opt)
      : c_(c), args_(args), opt_(opt), containing_(c.size()) {
    for (std::size_t i = 0; i < args_.size(); ++i) {
      const Tuple& t = args_.tuples()[i];
      for (std::size_t p = 0; p < t.size(); ++p)
        if (p == 0 || t[p] != t[p - 1]) containing_[t[p]].push_back(i);
    }
  }

  double run(MomentState* state) {
    for (const Tuple& t : args_) {
      set_current(t[0]);
      const double v = expand(t);
      check_finite(v, t[0]);
      value_.emplace(t, v);
    }
    set_current(c_.output());
    const double out = lookup({c_.output()});
    check_finite(out, c_.output());
    if (state) {
      state->tracked = args_;
      for (const Tuple& t : args_) {
        const double v = value_.at(t);
        if (t.size() == 1) state->means[t[0]] = v;
        else state->cumulants[t] = v;
      }
    }
    return out;
  }

 private:
  void set_current(NodeIndex k) {
    if (k != current_ || !has_current_) {
      current_ = k;
      has_current_ = true;
      memo_.clear();
    }
  }

  // Tracked values, or the gate expansion for tuples headed by the node being
  // evaluated; anything else is an untracked cumulant and reads as 0.
  double lookup(const Tuple& t) {
    if (auto it = value_.find(t); it != value_.end()) return it->second;
    if (t[0] != current_) return 0.0;
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    const double v = expand(t);
    memo_.emplace(t, v);
    return v;
  }

  static Tuple with(Tuple rest, NodeIndex x) {
    rest.insert(std::upper_bound(rest.begin(), rest.end(), x, std::greater<>()), x);
    return rest;
  }

  double expand(const Tuple& t) {
    const NodeIndex k = t[0];
    const ArithNode& nd = c_.node(k);
    const Tuple rest(t.begin() + 1, t.end());
    switch (nd.op) {
      case ArithOp::Input:
        return (rest.size() == 1 && rest[0] == k) ? 1.0 : 0.0;
      case ArithOp::Const:
        return rest.empty() ? nd.value : 0.0;
      case ArithOp::Add:
        return lookup(with(rest, nd.a)) + lookup(with(rest, nd.b));
      case ArithOp::Mul: {
        double v = lookup(with(with(rest, nd.a), nd.b));
        const bool self_ref = !rest.empty() && rest[0] == k;
        v += (opt_.enumerate_splits || self_ref) ? splits_enumerated(nd.a, nd.b, rest)
                                                 : splits_indexed(nd.a, nd.b, rest);
        return v;
      }
    }
    return 0.0;
  }

  // Sum over ordered splits rest = J + K of lookup(a, J) * lookup(b, K).
  double splits_enumerated(NodeIndex a, NodeIndex b, const Tuple& rest) {
    const std::size_t r = rest.size();
    double s = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
      Tuple j{a}, kk{b};
      for (std::size_t i = 0; i < r; ++i) {
        if ((mask >> i) & 1) j.push_back(rest[i]);
        else kk.push_back(rest[i]);
      }
      const double x = lookup(canonical(std::move(j)));
      if (x == 0.0) continue;
      s += x * lookup(canonical(std::move(kk)));
    }
    return s;
  }

  // Same sum, visiting only tracked tuples (a, J); untracked ones contribute 0.
  // Valid when `rest` does not contain the current node.
  double splits_indexed(NodeIndex a, NodeIndex b, const Tuple& rest) {
    double s = 0.0;
    for (std::size_t idx : containing_[a]) {
      const Tuple& t = args_.tuples()[idx];
      if (t.size() > rest.size() + 1 || t[0] >= current_) continue;
      // J = t minus one copy of a; K = rest minus J, with the multiset
      // multiplicity of choosing J's positions inside rest.
      Tuple jset(t);
      jset.erase(std::find(jset.begin(), jset.end(), a));
      Tuple kset{b};
      double mult = 1.0;
      std::size_t p = 0, q = 0;
      bool ok = true;
      while (p < rest.size()) {
        const NodeIndex v = rest[p];
        std::size_t cr = 0, cj = 0;
        while (p < rest.size() && rest[p] == v) ++p, ++cr;
        if (q < jset.size() && jset[q] > v) {
          ok = false;
          break;
        }
        while (q < jset.size() && jset[q] == v) ++q, ++cj;
        if (cj > cr) {
          ok = false;
          break;
        }
        mult *= binomial(cr, cj);
        for (std::size_t i = cj; i < cr; ++i) kset.push_back(v);
      }
      if (!ok || q != jset.size()) continue;
      const double x = value_.at(t);
      if (x == 0.0) continue;
      s += mult * x * lookup(canonical(std::move(kset)));
    }
    return s;
  }

  static double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
  }

  const ArithCircuit& c_;
  const ArgumentSet& args_;
  CumulantOptions opt_;
  std::vector<std::vector<std::size_t>> containing_;
  std::unordered_map<Tuple, double, TupleHash> value_;
  std::unordered_map<Tuple, double, TupleHash> memo_;
  NodeIndex current_ = 0;
  bool has_current_ = false;
};

}  // namespace detail

// Cumulant propagation. Tuples in `args` are evaluated in lexicographic
// order; the output's mean is always evaluated even when not tracked.
inline Estimate cumulant_prop(const ArithCircuit& c, const ArgumentSet& args,
                              const CumulantOptions& opt = {}) {
  args.check_range(c.size());
  if (args.max_order() > opt.max_order)
    throw std::invalid_argument("argument tuple of order " + std::to_string(args.max_order()) +
                                " exceeds the cap of " + std::to_string(opt.max_order));
  detail::CumulantPropagator prop(c, args, opt);
  MomentState st;
  const double v = prop.run(&st);
  return {v, "cumulant", std::move(st)};
}

inline Estimate cumulant_prop(const ArithCircuit& c, std::span<const ArgumentSet> sets,
                              const CumulantOptions& opt = {}) {
  return cumulant_prop(c, union_of(sets), opt);
}

// Singletons for every node plus every pair: the covariance-level argument.
inline ArgumentSet pair_level_arguments(std::size_t node_count) {
  return all_tuples(node_count, 2);
}

}  // namespace heuristic
