#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "heuristic/hamiltonian.hpp"

using namespace heuristic;

namespace {

// Sum of cycle weights by listing every cyclic order starting at vertex 0.
double brute_cycle_sum(const WeightedDigraph& g) {
  std::vector<std::size_t> p(g.n());
  std::iota(p.begin(), p.end(), std::size_t{0});
  double total = 0;
  do {
    double w = 1;
    for (std::size_t i = 0; i < p.size(); ++i) w *= g(p[i], p[(i + 1) % p.size()]);
    total += w;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return total;
}

double naive_permanent(const Eigen::MatrixXd& a) {
  std::vector<std::size_t> p(static_cast<std::size_t>(a.rows()));
  std::iota(p.begin(), p.end(), std::size_t{0});
  double s = 0;
  do {
    double t = 1;
    for (std::size_t i = 0; i < p.size(); ++i) t *= a(Eigen::Index(i), Eigen::Index(p[i]));
    s += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

// Isserlis: E[prod of the listed variables] as a sum over perfect matchings.
double isserlis(const Eigen::MatrixXd& cov, std::vector<Eigen::Index> vars) {
  if (vars.empty()) return 1;
  if (vars.size() % 2) return 0;
  const Eigen::Index first = vars[0];
  double s = 0;
  for (std::size_t j = 1; j < vars.size(); ++j) {
    std::vector<Eigen::Index> rest;
    for (std::size_t k = 1; k < vars.size(); ++k)
      if (k != j) rest.push_back(vars[k]);
    s += cov(first, vars[j]) * isserlis(cov, rest);
  }
  return s;
}

nlohmann::json load(const std::string& name) {
  std::ifstream f(std::string(SAMPLES_DIR) + "/" + name);
  return nlohmann::json::parse(f);
}

}  // namespace

TEST(Graph, Validation) {
  EXPECT_THROW(WeightedDigraph(Eigen::MatrixXd::Zero(1, 1)), std::invalid_argument);
  EXPECT_THROW(WeightedDigraph(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
  EXPECT_THROW(WeightedDigraph(Eigen::MatrixXd::Ones(3, 3)), std::invalid_argument);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(0, 1) = NAN;
  EXPECT_THROW(WeightedDigraph{w}, std::invalid_argument);
  EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"n": 2, "weights": [[0, 1]]})")), ParseError);
  EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"weights": []})")), ParseError);
}

TEST(Graph, JsonRoundTrip) {
  const auto g = random_uniform_graph(5, Seed{1});
  EXPECT_EQ(graph_from_json(to_json(g)).weights(), g.weights());
}

TEST(ExactTotal, MatchesBruteForce) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 2 + s % 7;
    const auto g = random_pareto_graph(n, 1.5, Seed{s});
    const double want = brute_cycle_sum(g);
    EXPECT_NEAR(exact_total_weight(g), want, 1e-9 * std::abs(want)) << n;
  }
  EXPECT_THROW(exact_total_weight(random_uniform_graph(11, Seed{1})), InfeasibleError);
}

TEST(ExactTotal, UniformGraph) {
  for (std::size_t n = 2; n <= 8; ++n) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
    const WeightedDigraph g(w);
    EXPECT_DOUBLE_EQ(exact_total_weight(g), factorial(n - 1));
    EXPECT_DOUBLE_EQ(estimate_s0(g), factorial(n - 1));
    EXPECT_DOUBLE_EQ(estimate_sin(g), factorial(n - 1));
    EXPECT_DOUBLE_EQ(estimate_sout(g), factorial(n - 1));
    EXPECT_DOUBLE_EQ(estimate_sinout(g), factorial(n - 1));
    EXPECT_NEAR(estimate_full(g), factorial(n - 1), 1e-9 * factorial(n - 1));
  }
}

TEST(Estimators, ScaleInvariance) {
  const auto g = random_uniform_graph(6, Seed{2});
  const WeightedDigraph h(g.weights() * 3.0);
  const double f = std::pow(3.0, 6);
  EXPECT_NEAR(estimate_s0(h), f * estimate_s0(g), 1e-9 * f * estimate_s0(g));
  EXPECT_NEAR(estimate_sinout(h), f * estimate_sinout(g), 1e-9 * f * estimate_sinout(g));
  EXPECT_NEAR(estimate_full(h), f * estimate_full(g), 1e-9 * f * estimate_full(g));
  EXPECT_NEAR(exact_total_weight(h), f * exact_total_weight(g), 1e-9 * f * exact_total_weight(g));
}

TEST(Estimators, RelabelInvariance) {
  const auto g = random_pareto_graph(6, 1.2, Seed{3});
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(6);
  perm.indices() << 3, 1, 5, 0, 2, 4;
  const WeightedDigraph h(perm * g.weights() * perm.transpose());
  EXPECT_NEAR(exact_total_weight(h), exact_total_weight(g), 1e-9 * exact_total_weight(g));
  EXPECT_NEAR(estimate_sin(h), estimate_sin(g), 1e-9 * estimate_sin(g));
  EXPECT_NEAR(estimate_sout(h), estimate_sout(g), 1e-9 * estimate_sout(g));
  EXPECT_NEAR(estimate_full(h), estimate_full(g), 1e-9 * estimate_full(g));
}

TEST(Estimators, VertexScalingIsExact) {
  // Scaling a vertex's out-edges (or in-edges) by c scales every cycle by c.
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(5, 5) - Eigen::MatrixXd::Identity(5, 5);
  w.row(2) *= 7.0;
  const WeightedDigraph g(w);
  EXPECT_DOUBLE_EQ(exact_total_weight(g), 24 * 7.0);
  EXPECT_DOUBLE_EQ(estimate_sout(g), 24 * 7.0);
  EXPECT_GT(estimate_sin(g), 24 * 7.0);
  const WeightedDigraph h(Eigen::MatrixXd(w.transpose()));
  EXPECT_DOUBLE_EQ(estimate_sin(h), 24 * 7.0);
}

TEST(Estimators, SignedSplit) {
  const WeightedDigraph g(graph_from_json(load("signed5_graph.json")));
  const auto s = sinout_signed_split(g);
  EXPECT_GE(s.plus, 0.0);
  EXPECT_NEAR(s.plus - s.minus, estimate_sinout(g), 1e-12);
  EXPECT_NEAR(s.plus + s.minus, estimate_sinout(g.abs()), 1e-12);
  EXPECT_TRUE(std::isfinite(estimate_full(g)));
}

TEST(Estimators, Degenerate) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  const WeightedDigraph z(w);
  EXPECT_EQ(estimate_sinout(z), 0.0);
  EXPECT_EQ(estimate_full(z), 0.0);
  EXPECT_THROW(p_unique(z), std::domain_error);
  // Row and column sums nonzero, total sum zero.
  Eigen::MatrixXd v(3, 3);
  v << 0, 1, 1, 1, 0, 1, -2, -2, 0;
  EXPECT_THROW(estimate_sinout(WeightedDigraph(v)), std::domain_error);
}

TEST(Estimators, PUnique) {
  const auto g = random_uniform_graph(6, Seed{4});
  EXPECT_GT(p_unique(g), 0.0);
  EXPECT_LE(p_unique(g), 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(6, 6) - Eigen::MatrixXd::Identity(6, 6);
  EXPECT_NEAR(p_unique(WeightedDigraph(w)), p_unique_uniform(6), 1e-12);
  // One dominant edge makes repeats likely.
  w(0, 1) = 1000;
  EXPECT_LT(p_unique(WeightedDigraph(w)), p_unique_uniform(6));
}

TEST(Cycles, SignedFive) {
  const auto g = graph_from_json(load("signed5_graph.json"));
  const auto cycles = cycles_from_json(load("signed5_cycle.json"), g.n());
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycle_weight(g, cycles[0]), 36.0);
  const double base = 48.0;
  EXPECT_DOUBLE_EQ(adjust_with_cycles(g, base, cycles), 36.0 + 23.0 * 2.0);
}

TEST(Cycles, AllCyclesGiveExactTotal) {
  const auto g = random_pareto_graph(5, 1.3, Seed{5});
  std::vector<Cycle> all;
  Cycle p{0, 1, 2, 3, 4};
  do all.push_back(p);
  while (std::next_permutation(p.begin() + 1, p.end()));
  EXPECT_NEAR(adjust_with_cycles(g, 12345.0, all), exact_total_weight(g), 1e-9 * exact_total_weight(g));
  EXPECT_EQ(adjust_with_cycles(g, 7.0, std::span<const Cycle>{}), 7.0);
}

TEST(Cycles, Errors) {
  const auto g = random_uniform_graph(4, Seed{1});
  const std::vector<Cycle> dup{{0, 1, 2, 3}, {0, 1, 2, 3}};
  EXPECT_THROW(adjust_with_cycles(g, 1.0, dup), std::invalid_argument);
  EXPECT_THROW(cycle_weight(g, {1, 0, 2, 3}), std::invalid_argument);
  EXPECT_THROW(cycle_weight(g, {0, 1, 1, 3}), std::invalid_argument);
  EXPECT_THROW(cycle_weight(g, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(cycles_from_json(nlohmann::json::parse("[[1, 2, 3, 5]]"), 4), ParseError);
  EXPECT_THROW(cycles_from_json(nlohmann::json::parse("[[0, 1, 2, 3]]"), 4), ParseError);
  EXPECT_THROW(cycles_from_json(nlohmann::json::parse("{}"), 4), ParseError);
}

TEST(RandomGraphs, DeterministicAndPositive) {
  EXPECT_EQ(random_uniform_graph(6, Seed{8}).weights(), random_uniform_graph(6, Seed{8}).weights());
  EXPECT_NE(random_uniform_graph(6, Seed{8}).weights(), random_uniform_graph(6, Seed{9}).weights());
  const auto p = random_pareto_graph(6, 1.2, Seed{8});
  for (std::size_t u = 0; u < 6; ++u)
    for (std::size_t v = 0; v < 6; ++v)
      if (u != v) {
        EXPECT_GE(p(u, v), 1.0);
      }
}

TEST(Permanent, RyserMatchesNaive) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t n = 1 + s % 8;
    Stream rng(Seed{s});
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
    const double want = naive_permanent(a);
    EXPECT_NEAR(perm_exact(a), want, 1e-9 * (1 + std::abs(want))) << n;
  }
  EXPECT_DOUBLE_EQ(perm_exact(Eigen::MatrixXd::Ones(5, 5)), 120.0);
  EXPECT_THROW(perm_exact(Eigen::MatrixXd::Ones(13, 13)), InfeasibleError);
}

TEST(Permanent, Subset) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 4;
  const std::vector<Permutation> both{{0, 1}, {1, 0}};
  EXPECT_EQ(perm_subset(a, both), 10.0);
  const std::vector<Permutation> dup{{0, 1}, {0, 1}};
  EXPECT_THROW(perm_subset(a, dup), std::invalid_argument);
  const std::vector<Permutation> bad{{0, 0}};
  EXPECT_THROW(perm_subset(a, bad), std::invalid_argument);
}

TEST(Permanent, CycleCount) {
  EXPECT_EQ(cycle_count({0, 1, 2}), 3u);
  EXPECT_EQ(cycle_count({1, 2, 0}), 1u);
  EXPECT_EQ(cycle_count({1, 0, 3, 2}), 2u);
}

TEST(SquareMoment, IsserlisOracle) {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const std::size_t n = 1 + s % 5;
    const Eigen::MatrixXd a = random_psd_matrix(n, Seed{s});
    std::vector<Eigen::Index> vars;
    for (Eigen::Index i = 0; i < Eigen::Index(n); ++i) vars.insert(vars.end(), {i, i});
    const double want = isserlis(a, vars);
    EXPECT_NEAR(gaussian_square_moment(a), want, 1e-9 * std::abs(want)) << n;
  }
}

TEST(SquareMoment, SmallCases) {
  EXPECT_DOUBLE_EQ(gaussian_square_moment(Eigen::MatrixXd::Identity(2, 2)), 1.0);
  EXPECT_DOUBLE_EQ(gaussian_square_moment(Eigen::MatrixXd::Ones(2, 2)), 3.0);
  EXPECT_DOUBLE_EQ(gaussian_square_moment(Eigen::MatrixXd::Ones(3, 3)), 15.0);
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(gaussian_square_moment(bad), std::domain_error);
  EXPECT_TRUE(is_psd(random_psd_matrix(6, Seed{1})));
  EXPECT_FALSE(is_psd(bad));
}
