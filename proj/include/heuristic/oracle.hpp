#pragma once

// Ground truth for circuit estimators: exhaustive boolean counting, exact
// Gaussian expectations of expanded polynomials, and seeded Monte Carlo.

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <map>
#include <span>
#include <thread>
#include <variant>
#include <vector>

#include "heuristic/circuit.hpp"
#include "heuristic/dsl.hpp"
#include "heuristic/errors.hpp"
#include "heuristic/rng.hpp"

namespace heuristic {

struct BoolCount {
  std::uint64_t count = 0;
  std::uint64_t total = 1;
  double value() const { return static_cast<double>(count) / static_cast<double>(total); }
};

// Counts satisfying assignments over all 2^n inputs, 64 assignments per word.
inline BoolCount brute_force_bool(const BoolCircuit& c, std::uint32_t max_inputs = 24) {
  const std::uint32_t n = c.input_count();
  if (n > max_inputs)
    throw InfeasibleError("brute force over " + std::to_string(n) + " inputs exceeds the cap of " +
                          std::to_string(max_inputs));
  if (n > 62) throw InfeasibleError("brute force needs fewer than 63 inputs");
  static constexpr std::uint64_t lane_masks[6] = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
  const std::uint32_t low = std::min<std::uint32_t>(n, 6);
  const std::uint64_t lanes = std::uint64_t{1} << low;
  const std::uint64_t live = lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
  const std::uint64_t words = std::uint64_t{1} << (n - low);

  std::vector<std::uint64_t> in(n), scratch;
  for (std::uint32_t i = 0; i < low; ++i) in[i] = lane_masks[i];
  std::uint64_t count = 0;
  for (std::uint64_t w = 0; w < words; ++w) {
    for (std::uint32_t i = low; i < n; ++i) in[i] = ((w >> (i - low)) & 1) ? ~std::uint64_t{0} : 0;
    count += static_cast<std::uint64_t>(std::popcount(eval_bool_lanes(c, in, scratch) & live));
  }
  return {count, std::uint64_t{1} << n};
}

// Monomials are nondecreasing lists of input labels (1-based).
using Monomial = std::vector<std::uint32_t>;

struct PolynomialCaps {
  std::size_t max_degree = 12;
  std::size_t max_terms = 100000;
};

class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial constant(double c) {
    Polynomial p;
    if (c != 0.0) p.terms_[{}] = c;
    return p;
  }
  static Polynomial variable(std::uint32_t label) {
    Polynomial p;
    p.terms_[{label}] = 1.0;
    return p;
  }

  const std::map<Monomial, double>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return d;
  }

  double coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
  }

  friend Polynomial operator+(const Polynomial& x, const Polynomial& y) {
    Polynomial r = x;
    for (const auto& [m, c] : y.terms_) r.accumulate(m, c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
    Polynomial r;
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) {
        Monomial m;
        m.reserve(mx.size() + my.size());
        std::merge(mx.begin(), mx.end(), my.begin(), my.end(), std::back_inserter(m));
        r.accumulate(m, cx * cy);
      }
    return r;
  }

  double evaluate(std::span<const double> z) const {
    double s = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = c;
      for (std::uint32_t v : m) t *= z[v - 1];
      s += t;
    }
    return s;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void accumulate(const Monomial& m, double c) {
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    } else if (c == 0.0) {
      terms_.erase(it);
    }
  }

  std::map<Monomial, double> terms_;
};

// Expands the circuit into a polynomial in its inputs; refuses (InfeasibleError)
// rather than truncating when a cap is exceeded.
inline Polynomial expand(const ArithCircuit& c, const PolynomialCaps& caps = {}) {
  std::vector<Polynomial> p(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const ArithNode& nd = c.nodes()[k];
    switch (nd.op) {
      case ArithOp::Input: p[k] = Polynomial::variable(nd.label); break;
      case ArithOp::Const: p[k] = Polynomial::constant(nd.value); break;
      case ArithOp::Add: p[k] = p[nd.a] + p[nd.b]; break;
      case ArithOp::Mul: {
        if (p[nd.a].degree() + p[nd.b].degree() > caps.max_degree)
          throw InfeasibleError("expansion exceeds degree cap " + std::to_string(caps.max_degree) +
                                " at node " + std::to_string(k + 1));
        if (p[nd.a].size() * p[nd.b].size() > caps.max_terms * 16)
          throw InfeasibleError("expansion exceeds term cap at node " + std::to_string(k + 1));
        p[k] = p[nd.a] * p[nd.b];
        break;
      }
    }
    if (p[k].size() > caps.max_terms)
      throw InfeasibleError("expansion exceeds term cap " + std::to_string(caps.max_terms) +
                            " at node " + std::to_string(k + 1));
  }
  return p[c.output()];
}

// E[z^e] for a standard normal: (e-1)!! for even e, 0 for odd e.
inline double normal_moment(std::size_t e) {
  if (e % 2) return 0.0;
  double r = 1.0;
  for (std::size_t i = e; i > 1; i -= 2) r *= static_cast<double>(i - 1);
  return r;
}

inline double exact_gaussian_mean(const Polynomial& p) {
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c;
    for (std::size_t i = 0; i < m.size() && t != 0.0;) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      t *= normal_moment(j - i);
      i = j;
    }
    s += t;
  }
  return s;
}

inline double exact_gaussian_mean(const ArithCircuit& c, const PolynomialCaps& caps = {}) {
  return exact_gaussian_mean(expand(c, caps));
}

struct MonteCarloResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  Seed seed;
  friend bool operator==(const MonteCarloResult&, const MonteCarloResult&) = default;
};

inline constexpr std::uint64_t kMonteCarloBlock = 4096;

namespace detail {

struct BlockStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

inline BlockStats combine(const BlockStats& x, const BlockStats& y) {
  if (x.n == 0) return y;
  if (y.n == 0) return x;
  BlockStats r;
  r.n = x.n + y.n;
  const double delta = y.mean - x.mean;
  r.mean = x.mean + delta * static_cast<double>(y.n) / static_cast<double>(r.n);
  r.m2 = x.m2 + y.m2 + delta * delta * static_cast<double>(x.n) * static_cast<double>(y.n) /
                           static_cast<double>(r.n);
  return r;
}

inline BlockStats sample_block(const BoolCircuit& c, Stream& rng, std::uint64_t n) {
  std::vector<std::uint64_t> in(c.input_count()), scratch;
  std::uint64_t ones = 0;
  for (std::uint64_t done = 0; done < n; done += 64) {
    for (auto& w : in) w = rng.next();
    std::uint64_t out = eval_bool_lanes(c, in, scratch);
    const std::uint64_t take = std::min<std::uint64_t>(64, n - done);
    if (take < 64) out &= (std::uint64_t{1} << take) - 1;
    ones += static_cast<std::uint64_t>(std::popcount(out));
  }
  const double mean = static_cast<double>(ones) / static_cast<double>(n);
  const double m2 = static_cast<double>(ones) * (1 - mean) * (1 - mean) +
                    static_cast<double>(n - ones) * mean * mean;
  return {n, mean, m2};
}

inline BlockStats sample_block(const ArithCircuit& c, Stream& rng, std::uint64_t n) {
  std::vector<double> z(c.input_count());
  BlockStats s;
  for (std::uint64_t i = 0; i < n; ++i) {
    for (auto& v : z) v = rng.normal();
    const double x = eval_arith(c, z);
    ++s.n;
    const double d = x - s.mean;
    s.mean += d / static_cast<double>(s.n);
    s.m2 += d * (x - s.mean);
  }
  return s;
}

}  // namespace detail

// Seeded Monte Carlo estimate of the circuit's mean (fair-coin inputs for
// boolean circuits, standard normal inputs for arithmetic ones). Samples are
// drawn in fixed blocks, block b from child_seed(seed, b), and combined in
// block order, so the result does not depend on `workers`.
template <class Circuit>
MonteCarloResult monte_carlo(const Circuit& c, std::uint64_t samples, Seed seed, unsigned workers = 1) {
  if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
  const std::uint64_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<detail::BlockStats> stats(blocks);
  auto run = [&](std::uint64_t b) {
    Stream rng(child_seed(seed, b));
    const std::uint64_t n = std::min(kMonteCarloBlock, samples - b * kMonteCarloBlock);
    stats[b] = detail::sample_block(c, rng, n);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run(b);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t b = w; b < blocks; b += workers) run(b);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  detail::BlockStats total;
  for (const auto& s : stats) total = detail::combine(total, s);
  const double var = total.m2 / static_cast<double>(total.n - 1);
  return {total.mean, std::sqrt(std::max(0.0, var) / static_cast<double>(total.n)), total.n, seed};
}

inline MonteCarloResult monte_carlo(const AnyCircuit& c, std::uint64_t samples, Seed seed,
                                    unsigned workers = 1) {
  return std::visit([&](const auto& x) { return monte_carlo(x, samples, seed, workers); }, c);
}

}  // namespace heuristic
