#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "heuristic/oracle.hpp"
#include "heuristic/random_circuit.hpp"

using namespace heuristic;

TEST(BruteForce, XorTree) {
  const auto r = brute_force_bool(fixtures::xor_tree());
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(r.total, 8u);
  EXPECT_EQ(r.value(), 0.25);
}

TEST(BruteForce, Xor) {
  const auto c = parse_bool("input a\ninput b\ngate g XOR a b\noutput g\n");
  EXPECT_EQ(brute_force_bool(c).value(), 0.5);
}

TEST(BruteForce, MatchesScalarEvaluation) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::uint32_t n = 1 + s % 9;
    const auto c = random_bool_circuit({n, 40}, Seed{s});
    std::uint64_t count = 0;
    std::vector<bool> in(n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      for (std::uint32_t i = 0; i < n; ++i) in[i] = (x >> i) & 1;
      count += eval_bool(c, in);
    }
    EXPECT_EQ(brute_force_bool(c).count, count) << s;
  }
}

TEST(BruteForce, CapIsEnforced) {
  const auto c = random_bool_circuit({10, 5}, Seed{1});
  EXPECT_THROW(brute_force_bool(c, 9), InfeasibleError);
  EXPECT_NO_THROW(brute_force_bool(c, 10));
}

TEST(Expand, TwoProducts) {
  const Polynomial p = expand(fixtures::two_products());
  Polynomial want = Polynomial::constant(1) + Polynomial::constant(2) * Polynomial::variable(1) +
                    Polynomial::constant(2) * Polynomial::variable(2) +
                    Polynomial::constant(2) * Polynomial::variable(1) * Polynomial::variable(2) +
                    Polynomial::variable(2) * Polynomial::variable(2);
  EXPECT_EQ(p, want);
  EXPECT_EQ(p.coefficient({1}), 2.0);
  EXPECT_EQ(p.coefficient({2, 2}), 1.0);
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_EQ(exact_gaussian_mean(p), 2.0);
}

TEST(Expand, AgreesWithEvaluation) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    RandomArithSpec spec{3, 15, 2};
    spec.max_degree = 6;
    const auto c = random_arith_circuit(spec, Seed{s});
    const Polynomial p = expand(c);
    Stream rng(Seed{s + 1000});
    for (int t = 0; t < 5; ++t) {
      std::vector<double> z(3);
      for (auto& v : z) v = rng.uniform() * 2 - 1;
      const double direct = eval_arith(c, z);
      EXPECT_NEAR(p.evaluate(z), direct, 1e-9 * (1 + std::abs(direct))) << s;
    }
  }
}

TEST(Expand, Caps) {
  const auto c = parse_arith("input z\nmul a z z\nmul b a a\nmul d b b\nmul e d d\noutput e\n");
  EXPECT_THROW(expand(c), InfeasibleError);
  EXPECT_NO_THROW(expand(c, {16, 100}));
  EXPECT_THROW(expand(random_arith_circuit({6, 40, 1}, Seed{3}), {40, 5}), InfeasibleError);
}

TEST(GaussianMean, Moments) {
  EXPECT_EQ(normal_moment(0), 1.0);
  EXPECT_EQ(normal_moment(1), 0.0);
  EXPECT_EQ(normal_moment(2), 1.0);
  EXPECT_EQ(normal_moment(4), 3.0);
  EXPECT_EQ(normal_moment(6), 15.0);
  EXPECT_EQ(normal_moment(8), 105.0);
  const auto c = parse_arith("input z\nmul a z z\nmul b a a\nmul d b a\noutput d\n");
  EXPECT_EQ(exact_gaussian_mean(c), 15.0);
  EXPECT_EQ(exact_gaussian_mean(parse_arith("input x\ninput y\nmul m x y\noutput m\n")), 0.0);
}

TEST(MonteCarlo, BracketsExactBool) {
  const auto c = fixtures::xor_tree();
  const auto r = monte_carlo(c, 200000, Seed{5});
  EXPECT_EQ(r.samples, 200000u);
  EXPECT_NEAR(r.mean, 0.25, 5 * r.std_error);
  EXPECT_NEAR(r.std_error, std::sqrt(0.25 * 0.75 / 200000), 1e-4);
}

TEST(MonteCarlo, BracketsExactArith) {
  const auto c = fixtures::two_products();
  const auto r = monte_carlo(c, 200000, Seed{6});
  EXPECT_NEAR(r.mean, 2.0, 5 * r.std_error);
  EXPECT_GT(r.std_error, 0.0);
}

TEST(MonteCarlo, NormalSamplesHaveUnitVariance) {
  const auto c = parse_arith("input z\nmul m z z\noutput m\n");
  const auto r = monte_carlo(c, 400000, Seed{7});
  // Var(z^2) = 2.
  EXPECT_NEAR(r.mean, 1.0, 5 * r.std_error);
  EXPECT_NEAR(r.std_error * std::sqrt(400000.0), std::sqrt(2.0), 0.05);
}

TEST(MonteCarlo, Deterministic) {
  const auto c = fixtures::two_products();
  EXPECT_EQ(monte_carlo(c, 50000, Seed{9}), monte_carlo(c, 50000, Seed{9}));
  EXPECT_NE(monte_carlo(c, 50000, Seed{9}).mean, monte_carlo(c, 50000, Seed{10}).mean);
}

TEST(MonteCarlo, WorkerCountDoesNotMatter) {
  const auto a = fixtures::two_products();
  const auto b = fixtures::xor_tree();
  for (unsigned w : {2u, 3u, 8u}) {
    EXPECT_EQ(monte_carlo(a, 30001, Seed{4}, w), monte_carlo(a, 30001, Seed{4}, 1));
    EXPECT_EQ(monte_carlo(b, 30001, Seed{4}, w), monte_carlo(b, 30001, Seed{4}, 1));
  }
}

TEST(MonteCarlo, AnyCircuit) {
  const AnyCircuit c = fixtures::xor_tree();
  EXPECT_EQ(monte_carlo(c, 1000, Seed{1}), monte_carlo(fixtures::xor_tree(), 1000, Seed{1}));
  EXPECT_THROW(monte_carlo(c, 1, Seed{1}), std::invalid_argument);
}
