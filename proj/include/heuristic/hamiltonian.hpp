#pragma once

// Estimators for the total weight of Hamiltonian cycles in a weighted digraph,
// plus permanents and the Gaussian square moment they bound.

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "heuristic/errors.hpp"
#include "heuristic/rng.hpp"

namespace heuristic {

// Edge weights E(u, v); absent edges have weight 0 and the diagonal is 0.
class WeightedDigraph {
 public:
  explicit WeightedDigraph(Eigen::MatrixXd weights) : w_(std::move(weights)) {
    if (w_.rows() != w_.cols()) throw std::invalid_argument("weight matrix must be square");
    if (w_.rows() < 2) throw std::invalid_argument("graph needs at least 2 vertices");
    for (Eigen::Index u = 0; u < w_.rows(); ++u)
      for (Eigen::Index v = 0; v < w_.cols(); ++v) {
        if (!std::isfinite(w_(u, v))) throw std::invalid_argument("edge weights must be finite");
        if (u == v && w_(u, v) != 0.0)
          throw std::invalid_argument("diagonal weight of vertex " + std::to_string(u + 1) + " must be 0");
      }
  }

  std::size_t n() const noexcept { return static_cast<std::size_t>(w_.rows()); }
  double operator()(std::size_t u, std::size_t v) const { return w_(u, v); }
  const Eigen::MatrixXd& weights() const noexcept { return w_; }

  bool nonnegative() const { return (w_.array() >= 0.0).all(); }

  WeightedDigraph abs() const { return WeightedDigraph(w_.cwiseAbs()); }

 private:
  Eigen::MatrixXd w_;
};

inline WeightedDigraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("weights"))
    throw ParseError("graph file needs \"n\" and \"weights\"", 0);
  const auto n = j["n"].get<long long>();
  const auto& rows = j["weights"];
  if (n < 2 || !rows.is_array() || static_cast<long long>(rows.size()) != n)
    throw ParseError("\"weights\" must have n rows with n >= 2", 0);
  Eigen::MatrixXd w(n, n);
  for (long long u = 0; u < n; ++u) {
    if (!rows[u].is_array() || static_cast<long long>(rows[u].size()) != n)
      throw ParseError("row " + std::to_string(u + 1) + " must have n entries", 0);
    for (long long v = 0; v < n; ++v) {
      if (!rows[u][v].is_number()) throw ParseError("weights must be numbers", 0);
      w(u, v) = rows[u][v].get<double>();
    }
  }
  try {
    return WeightedDigraph(std::move(w));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

inline nlohmann::json to_json(const WeightedDigraph& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t u = 0; u < g.n(); ++u) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t v = 0; v < g.n(); ++v) r.push_back(g(u, v));
    rows.push_back(std::move(r));
  }
  return {{"n", g.n()}, {"weights", std::move(rows)}};
}

inline double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

inline constexpr std::size_t kMaxExactVertices = 10;

// Sum over Hamiltonian cycles of the product of edge weights, by a sum-product
// dynamic program over vertex subsets (cycles rooted at vertex 0).
inline double exact_total_weight(const WeightedDigraph& g, std::size_t max_n = kMaxExactVertices) {
  const std::size_t n = g.n();
  if (n > max_n)
    throw InfeasibleError("exact cycle sum for n = " + std::to_string(n) + " exceeds the cap of " +
                          std::to_string(max_n));
  const std::size_t full = std::size_t{1} << n;
  std::vector<double> dp(full * n, 0.0);  // dp[mask * n + v]: paths 0 -> v covering mask
  dp[1 * n + 0] = 1.0;
  for (std::size_t mask = 1; mask < full; mask += 2) {
    for (std::size_t v = 0; v < n; ++v) {
      const double cur = dp[mask * n + v];
      if (cur == 0.0) continue;
      for (std::size_t u = 1; u < n; ++u) {
        if (mask & (std::size_t{1} << u)) continue;
        dp[(mask | (std::size_t{1} << u)) * n + u] += cur * g(v, u);
      }
    }
  }
  double total = 0.0;
  for (std::size_t v = 1; v < n; ++v) total += dp[(full - 1) * n + v] * g(v, 0);
  return total;
}

inline double mean_off_diagonal(const WeightedDigraph& g) {
  const std::size_t n = g.n();
  return g.weights().sum() / static_cast<double>(n * (n - 1));
}

inline double estimate_s0(const WeightedDigraph& g) {
  return factorial(g.n() - 1) * std::pow(mean_off_diagonal(g), static_cast<double>(g.n()));
}

inline double estimate_sout(const WeightedDigraph& g) {
  const double inv = 1.0 / static_cast<double>(g.n() - 1);
  double p = factorial(g.n() - 1);
  for (std::size_t u = 0; u < g.n(); ++u) p *= g.weights().row(u).sum() * inv;
  return p;
}

inline double estimate_sin(const WeightedDigraph& g) {
  const double inv = 1.0 / static_cast<double>(g.n() - 1);
  double p = factorial(g.n() - 1);
  for (std::size_t v = 0; v < g.n(); ++v) p *= g.weights().col(v).sum() * inv;
  return p;
}

namespace detail {

inline double sinout_direct(const WeightedDigraph& g) {
  const double s0 = estimate_s0(g);
  const double num = estimate_sin(g) * estimate_sout(g);
  if (s0 == 0.0) {
    if (num == 0.0) return 0.0;
    throw std::domain_error("S_in * S_out is nonzero while S_0 = 0; the ratio is undefined");
  }
  return num / s0;
}

}  // namespace detail

struct SignedSplit {
  double plus = 0.0;
  double minus = 0.0;
};

// Estimates of the total weight of positive and of negative cycles, through
// 1(sign = +) = (1 + prod sign) / 2 applied to |E| and E.
inline SignedSplit sinout_signed_split(const WeightedDigraph& g) {
  const double all = detail::sinout_direct(g.abs());
  const double signed_total = detail::sinout_direct(g);
  return {(all + signed_total) / 2.0, (all - signed_total) / 2.0};
}

// S_in * S_out / S_0: exact on graphs with all weights equal. Signed graphs
// go through the positive/negative split.
inline double estimate_sinout(const WeightedDigraph& g) {
  if (g.nonnegative()) return detail::sinout_direct(g);
  const SignedSplit s = sinout_signed_split(g);
  return s.plus - s.minus;
}

// Probability that n edge draws, each edge chosen with probability
// proportional to |E(u, v)|, contain no repeated edge (edges treated as
// independent).
inline double p_unique(const WeightedDigraph& g) {
  const std::size_t n = g.n();
  const double total = g.weights().cwiseAbs().sum();
  if (total == 0.0) throw std::domain_error("total edge weight is 0");
  const double dn = static_cast<double>(n);
  double p = 1.0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double q = std::abs(g(u, v)) / total;
      p *= std::pow(1 - q, dn) + dn * q * std::pow(1 - q, dn - 1);
    }
  return p;
}

// p_unique of the graph with all n(n - 1) weights equal.
inline double p_unique_uniform(std::size_t n) {
  const double dn = static_cast<double>(n);
  const double q = 1.0 / (dn * (dn - 1));
  const double f = std::pow(1 - q, dn) + dn * q * std::pow(1 - q, dn - 1);
  double p = 1.0;
  for (std::size_t e = 0; e < n * (n - 1); ++e) p *= f;
  return p;
}

// S_in+out divided by the relative chance that a sampled edge multiset has no
// repeats, normalized so that equal-weight graphs stay exact.
inline double estimate_full(const WeightedDigraph& g) {
  const double base = estimate_sinout(g);
  if (base == 0.0) return 0.0;
  const double pu = p_unique(g);
  if (pu == 0.0) throw std::domain_error("no-repeat probability is 0; correction undefined");
  return base * p_unique_uniform(g.n()) / pu;
}

// A Hamiltonian cycle as a vertex sequence starting at vertex 0.
using Cycle = std::vector<std::size_t>;

inline void check_cycle(const Cycle& c, std::size_t n) {
  if (c.size() != n) throw std::invalid_argument("cycle must visit all " + std::to_string(n) + " vertices");
  if (c[0] != 0) throw std::invalid_argument("cycle must start at vertex 1");
  std::vector<bool> seen(n, false);
  for (std::size_t v : c) {
    if (v >= n || seen[v]) throw std::invalid_argument("cycle must visit each vertex exactly once");
    seen[v] = true;
  }
}

inline double cycle_weight(const WeightedDigraph& g, const Cycle& c) {
  check_cycle(c, g.n());
  double w = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) w *= g(c[i], c[(i + 1) % c.size()]);
  return w;
}

// Exact weights for the exhibited cycles and the base estimate's per-cycle
// average for the remaining (n - 1)! - k.
inline double adjust_with_cycles(const WeightedDigraph& g, double base, std::span<const Cycle> cycles) {
  std::set<Cycle> seen;
  double exact = 0.0;
  for (const Cycle& c : cycles) {
    if (!seen.insert(c).second) throw std::invalid_argument("duplicate cycle in argument");
    exact += cycle_weight(g, c);
  }
  const double count = factorial(g.n() - 1);
  return exact + (count - static_cast<double>(cycles.size())) * (base / count);
}

inline std::vector<Cycle> cycles_from_json(const nlohmann::json& j, std::size_t n) {
  if (!j.is_array()) throw ParseError("cycle file must be a JSON list of vertex sequences", 0);
  std::vector<Cycle> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("each cycle must be a list of 1-based vertices", 0);
    Cycle c;
    for (const auto& v : row) {
      if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ParseError("cycle vertices must be positive integers", 0);
      c.push_back(static_cast<std::size_t>(v.get<long long>() - 1));
    }
    try {
      check_cycle(c, n);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 0);
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline WeightedDigraph random_uniform_graph(std::size_t n, Seed seed) {
  Stream rng(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) w(u, v) = rng.uniform();
  return WeightedDigraph(std::move(w));
}

// Pareto(alpha) weights with scale 1: (1 - U)^(-1/alpha).
inline WeightedDigraph random_pareto_graph(std::size_t n, double alpha, Seed seed) {
  Stream rng(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) w(u, v) = std::pow(rng.open_uniform(), -1.0 / alpha);
  return WeightedDigraph(std::move(w));
}

inline constexpr std::size_t kMaxPermanentSize = 12;

// Ryser's formula with Gray-code subset order.
inline double perm_exact(const Eigen::MatrixXd& a, std::size_t max_n = kMaxPermanentSize) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent needs a square matrix");
  const std::size_t n = static_cast<std::size_t>(a.rows());
  if (n > max_n)
    throw InfeasibleError("permanent of size " + std::to_string(n) + " exceeds the cap of " +
                          std::to_string(max_n));
  if (n == 0) return 1.0;
  std::vector<double> rowsum(n, 0.0);
  double total = 0.0;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const std::uint64_t changed = next ^ gray;
    const auto col = static_cast<Eigen::Index>(std::countr_zero(changed));
    const double sign_in = (next & changed) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) rowsum[i] += sign_in * a(static_cast<Eigen::Index>(i), col);
    gray = next;
    double prod = 1.0;
    for (double r : rowsum) prod *= r;
    total += (std::popcount(gray) % 2 == static_cast<int>(n % 2)) ? prod : -prod;
  }
  return total;
}

using Permutation = std::vector<std::size_t>;

inline void check_permutation(const Permutation& p, std::size_t n) {
  if (p.size() != n) throw std::invalid_argument("permutation must have length " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (std::size_t v : p) {
    if (v >= n || seen[v]) throw std::invalid_argument("malformed permutation");
    seen[v] = true;
  }
}

// Sum of prod_i A(i, sigma(i)) over the supplied permutations.
inline double perm_subset(const Eigen::MatrixXd& a, std::span<const Permutation> perms) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  std::set<Permutation> seen;
  double s = 0.0;
  for (const auto& p : perms) {
    check_permutation(p, n);
    if (!seen.insert(p).second) throw std::invalid_argument("duplicate permutation");
    double t = 1.0;
    for (std::size_t i = 0; i < n; ++i) t *= a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i]));
    s += t;
  }
  return s;
}

inline std::size_t cycle_count(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = true;
  }
  return c;
}

inline bool is_psd(const Eigen::MatrixXd& a, double tol = 1e-10) {
  if (a.rows() != a.cols()) return false;
  if (!a.isApprox(a.transpose(), 1e-12) && (a - a.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  if (a.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return es.eigenvalues().minCoeff() >= -tol * scale;
}

// E[(X_1 ... X_n)^2] for centered jointly normal X with covariance A:
// sum over permutations of 2^(n - #cycles) prod_i A(i, sigma(i)).
inline double gaussian_square_moment(const Eigen::MatrixXd& a, std::size_t max_n = kMaxExactVertices) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  if (n > max_n)
    throw InfeasibleError("square moment of size " + std::to_string(n) + " exceeds the cap of " +
                          std::to_string(max_n));
  if (!is_psd(a)) throw std::domain_error("covariance matrix must be symmetric positive semi-definite");
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  double s = 0.0;
  do {
    double t = std::ldexp(1.0, static_cast<int>(n - cycle_count(p)));
    for (std::size_t i = 0; i < n && t != 0.0; ++i)
      t *= a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i]));
    s += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

// Seeded PSD matrix V^T V with V an n x n matrix of standard normals.
inline Eigen::MatrixXd random_psd_matrix(std::size_t n, Seed seed) {
  Stream rng(seed);
  Eigen::MatrixXd v(n, n);
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index j = 0; j < v.cols(); ++j) v(i, j) = rng.normal();
  return v.transpose() * v;
}

}  // namespace heuristic
