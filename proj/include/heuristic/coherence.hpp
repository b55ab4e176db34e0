#pragma once

// Coherence checks for estimators (constants, linearity, argument
// rearrangement), constructions where tracked-moment estimators assign a
// negative value to a nonnegative quantity, and adversarial argument
// selection on conditionally convergent series.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <json.hpp>

#include "heuristic/argument_set.hpp"
#include "heuristic/circuit.hpp"
#include "heuristic/cumulants.hpp"
#include "heuristic/dsl.hpp"
#include "heuristic/hamiltonian.hpp"
#include "heuristic/maxent.hpp"
#include "heuristic/propagation.hpp"
#include "heuristic/random_circuit.hpp"
#include "heuristic/rng.hpp"

namespace heuristic {

// ---------------------------------------------------------------------------
// Midpoint of proven bounds

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

// (max lower + min upper) / 2, with no bounds giving 0.
inline Estimate midpoint_estimator(std::span<const Interval> bounds) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& b : bounds) {
    lo = std::max(lo, b.lo);
    hi = std::min(hi, b.hi);
  }
  if (lo > hi) throw std::invalid_argument("inconsistent bounds: lower bound exceeds upper bound");
  if (std::isinf(lo) && std::isinf(hi)) return {0.0, "midpoint", std::nullopt};
  if (std::isinf(lo) || std::isinf(hi))
    throw std::domain_error("one-sided bounds give an infinite midpoint");
  return {(lo + hi) / 2.0, "midpoint", std::nullopt};
}

inline Estimate midpoint_estimator(std::initializer_list<Interval> bounds) {
  return midpoint_estimator(std::span<const Interval>(bounds.begin(), bounds.size()));
}

// Events A and B with only the trivial bounds 0 <= AB, A(1-B), (1-A)B,
// (1-A)(1-B) <= 1 proven: each quadrant gets 1/2, so the four sum to 2 while
// their sum, the constant 1, gets 1.
struct MidpointWitness {
  double quadrants[4] = {0, 0, 0, 0};
  double quadrant_sum = 0.0;
  double whole = 0.0;
  bool linear() const { return quadrant_sum == whole; }
};

inline MidpointWitness midpoint_linearity_witness() {
  MidpointWitness w;
  for (double& q : w.quadrants) {
    q = midpoint_estimator({Interval{0.0, 1.0}}).value;
    w.quadrant_sum += q;
  }
  w.whole = midpoint_estimator({Interval{1.0, 1.0}}).value;
  return w;
}

// ---------------------------------------------------------------------------
// Desiderata harness

struct EstimatorHandle {
  std::string name;
  std::function<Estimate(const ArithCircuit&, std::span<const ArgumentSet>)> run;
};

// "mean", "cov", "sparse-cov", or "cumulant".
inline EstimatorHandle make_estimator(const std::string& name) {
  if (name == "mean")
    return {name, [](const ArithCircuit& c, std::span<const ArgumentSet>) { return mean_prop_arith(c); }};
  if (name == "cov")
    return {name, [](const ArithCircuit& c, std::span<const ArgumentSet>) { return cov_prop(c); }};
  if (name == "sparse-cov")
    return {name, [](const ArithCircuit& c, std::span<const ArgumentSet> a) {
              std::vector<Tuple> keep;
              for (const auto& t : union_of(a))
                if (t.size() <= 2) keep.push_back(t);
              return sparse_cov_prop(c, ArgumentSet(std::move(keep)));
            }};
  if (name == "cumulant")
    return {name, [](const ArithCircuit& c, std::span<const ArgumentSet> a) { return cumulant_prop(c, a); }};
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

struct CorpusEntry {
  ArithCircuit circuit;
  std::vector<ArgumentSet> args;
};

// Random circuits, each with one to three random argument sets over its nodes.
inline std::vector<CorpusEntry> random_corpus(std::size_t count, Seed seed) {
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    Stream rng(child_seed(seed, 2 * i));
    RandomArithSpec spec;
    spec.n = 1 + static_cast<std::uint32_t>(rng.below(4));
    spec.gates = static_cast<std::uint32_t>(rng.below(20));
    spec.constants = 1 + static_cast<std::uint32_t>(rng.below(2));
    spec.max_degree = 6;
    CorpusEntry e{random_arith_circuit(spec, child_seed(seed, 2 * i + 1)), {}};
    const std::size_t m = e.circuit.size();
    const std::size_t sets = 1 + rng.below(3);
    for (std::size_t s = 0; s < sets; ++s) {
      std::vector<Tuple> raw;
      const std::size_t tuples = rng.below(3 * m + 1);
      for (std::size_t t = 0; t < tuples; ++t) {
        Tuple tup(1 + rng.below(3));
        for (auto& v : tup) v = static_cast<NodeIndex>(rng.below(m));
        raw.push_back(std::move(tup));
      }
      e.args.emplace_back(std::move(raw));
    }
    out.push_back(std::move(e));
  }
  return out;
}

struct PropertyResult {
  std::string property;
  bool passed = true;
  std::size_t checked = 0;
  nlohmann::json witness;  // first counterexample, replayable
};

struct DesiderataReport {
  std::string estimator;
  std::vector<PropertyResult> properties;

  bool all_passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed; });
  }

  nlohmann::json to_json() const {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : properties) {
      nlohmann::json j = {{"property", p.property}, {"passed", p.passed}, {"checked", p.checked}};
      if (!p.passed) j["witness"] = p.witness;
      props.push_back(std::move(j));
    }
    return {{"estimator", estimator}, {"properties", std::move(props)}, {"all_passed", all_passed()}};
  }
};

namespace detail {

inline nlohmann::json args_json(std::span<const ArgumentSet> args) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& s : args) a.push_back(to_json(s));
  return a;
}

inline std::vector<Tuple> singletons(NodeIndex from, NodeIndex to) {
  std::vector<Tuple> t;
  for (NodeIndex k = from; k < to; ++k) t.push_back({k});
  return t;
}

// a * x + b * y appended to c's nodes; returns the new circuit.
inline ArithCircuit affine_combination(const ArithCircuit& c, NodeIndex x, NodeIndex y, double a, double b) {
  std::vector<ArithNode> nodes = c.nodes();
  const auto base = static_cast<NodeIndex>(nodes.size());
  nodes.push_back(ArithNode::constant(a));          // base
  nodes.push_back(ArithNode::constant(b));          // base + 1
  nodes.push_back(ArithNode::mul(base, x));         // base + 2
  nodes.push_back(ArithNode::mul(base + 1, y));     // base + 3
  nodes.push_back(ArithNode::add(base + 2, base + 3));
  return ArithCircuit(std::move(nodes), c.input_count(), base + 4);
}

}  // namespace detail

// Checks constants, linearity, and rearrangement invariance over the corpus.
// Values are compared bit-for-bit for constants and rearrangement, and to
// 1e-9 relative for linearity.
inline DesiderataReport check_desiderata(const EstimatorHandle& h, const std::vector<CorpusEntry>& corpus,
                                         Seed seed) {
  if (corpus.empty()) throw std::invalid_argument("desiderata corpus is empty");
  DesiderataReport rep;
  rep.estimator = h.name;
  for (const char* name : {"constants", "linearity", "rearrangement"}) {
    rep.properties.emplace_back();
    rep.properties.back().property = name;
  }
  auto& constants = rep.properties[0];
  auto& linearity = rep.properties[1];
  auto& rearrange = rep.properties[2];

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusEntry& e = corpus[i];
    Stream rng(child_seed(seed, i));

    // Constants: c1 + c2 * c3 with every node's mean tracked.
    {
      const double c1 = rng.uniform() * 8 - 4, c2 = rng.uniform() * 8 - 4, c3 = rng.uniform() * 8 - 4;
      std::vector<ArithNode> nodes = {ArithNode::constant(c1), ArithNode::constant(c2),
                                      ArithNode::constant(c3), ArithNode::mul(1, 2), ArithNode::add(0, 3)};
      const ArithCircuit cc(std::move(nodes), 0, 4);
      const std::vector<ArgumentSet> args = {ArgumentSet(detail::singletons(0, 5))};
      const double expect = eval_arith(cc, std::span<const double>{});
      const double got = h.run(cc, args).value;
      ++constants.checked;
      if (got != expect && constants.passed) {
        constants.passed = false;
        constants.witness = {{"circuit", pretty_print(cc)}, {"args", detail::args_json(args)},
                             {"expected", expect}, {"estimate", got}};
      }
      // The single-constant circuit.
      const ArithCircuit single({ArithNode::constant(c1)}, 0, 0);
      const double g1 = h.run(single, {}).value;
      ++constants.checked;
      if (g1 != c1 && constants.passed) {
        constants.passed = false;
        constants.witness = {{"circuit", pretty_print(single)}, {"args", nlohmann::json::array()},
                             {"expected", c1}, {"estimate", g1}};
      }
    }

    // Linearity: V(a X + b Y) = a V(X) + b V(Y) for nodes X, Y of one DAG.
    {
      const auto m = static_cast<NodeIndex>(e.circuit.size());
      const auto x = static_cast<NodeIndex>(rng.below(m)), y = static_cast<NodeIndex>(rng.below(m));
      const double a = rng.uniform() * 6 - 3, b = rng.uniform() * 6 - 3;
      const ArithCircuit combo = detail::affine_combination(e.circuit, x, y, a, b);
      std::vector<ArgumentSet> args = e.args;
      std::vector<Tuple> extra = detail::singletons(m, m + 5);
      extra.push_back({x});
      extra.push_back({y});
      args.emplace_back(std::move(extra));
      const double vx = h.run(combo.with_output(x), args).value;
      const double vy = h.run(combo.with_output(y), args).value;
      const double vc = h.run(combo, args).value;
      const double expect = a * vx + b * vy;
      const double tol = 1e-9 * (1.0 + std::abs(a * vx) + std::abs(b * vy));
      ++linearity.checked;
      if (!(std::abs(vc - expect) <= tol) && linearity.passed) {
        linearity.passed = false;
        linearity.witness = {{"circuit", pretty_print(combo)}, {"args", detail::args_json(args)},
                             {"x", x + 1}, {"y", y + 1}, {"a", a}, {"b", b},
                             {"estimate_x", vx}, {"estimate_y", vy}, {"estimate_combination", vc}};
      }
    }

    // Rearrangement and repetition of argument lists.
    {
      const double base = h.run(e.circuit, e.args).value;
      std::vector<std::vector<ArgumentSet>> variants;
      variants.emplace_back(e.args.rbegin(), e.args.rend());
      auto doubled = e.args;
      doubled.insert(doubled.end(), e.args.begin(), e.args.end());
      variants.push_back(doubled);
      // Split the union into singleton-tuple sets in shuffled order.
      std::vector<ArgumentSet> pieces;
      for (const auto& t : union_of(e.args)) pieces.push_back(ArgumentSet({t}));
      for (std::size_t j = pieces.size(); j > 1; --j) std::swap(pieces[j - 1], pieces[rng.below(j)]);
      variants.push_back(pieces);
      for (const auto& v : variants) {
        const double got = h.run(e.circuit, v).value;
        ++rearrange.checked;
        if (got != base && rearrange.passed) {
          rearrange.passed = false;
          rearrange.witness = {{"circuit", pretty_print(e.circuit)}, {"args", detail::args_json(e.args)},
                               {"rearranged_args", detail::args_json(v)}, {"estimate", base},
                               {"estimate_rearranged", got}};
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Negative estimates of nonnegative quantities

struct NegativeSquareWitness {
  std::string family;
  std::string quantity;     // what is provably nonnegative
  std::string certificate;  // why it is nonnegative
  double estimate = 0.0;
  bool negative() const { return estimate < 0.0; }
  std::optional<double> printed_value;  // value printed alongside the construction, if it differs
  std::optional<double> repaired;       // max-entropy estimate where one exists
  nlohmann::json details;

  nlohmann::json to_json() const {
    nlohmann::json j = {{"family", family}, {"quantity", quantity}, {"certificate", certificate},
                        {"estimate", estimate}, {"negative", negative()}};
    if (printed_value) j["printed_value"] = *printed_value;
    if (repaired) j["maxent_estimate"] = *repaired;
    if (!details.is_null()) j["details"] = details;
    return j;
  }
};

// Circuit for (sum_i alpha_i y_i)^2 where y is a stationary Gaussian chain
// y_1 = z_1, y_k = rho y_{k-1} + sqrt(1 - rho^2) z_k (unit variances,
// adjacent covariance rho), plus an argument set that tracks every mean, every
// pair between neighboring chain positions, and every pair touching the
// weighted-sum nodes, but no pair of non-neighboring chain positions.
struct ChainSquare {
  ArithCircuit circuit;
  ArgumentSet args;
  std::vector<NodeIndex> y;  // chain node of each position
};

inline ChainSquare chain_square_circuit(std::span<const double> alpha, double rho) {
  const std::size_t n = alpha.size();
  if (n < 1) throw std::invalid_argument("chain needs at least one node");
  std::vector<ArithNode> nodes;
  std::vector<std::size_t> pos;  // 0 = global, k >= 1 = chain position
  std::vector<std::string> names;
  auto push = [&](ArithNode nd, std::size_t p, std::string name) {
    nodes.push_back(nd);
    pos.push_back(p);
    names.push_back(std::move(name));
    return static_cast<NodeIndex>(nodes.size() - 1);
  };
  const NodeIndex c_rho = push(ArithNode::constant(rho), 0, "rho");
  const NodeIndex c_eps = push(ArithNode::constant(std::sqrt(1.0 - rho * rho)), 0, "eps");
  std::vector<NodeIndex> y;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::string s = std::to_string(k);
    const NodeIndex z = push(ArithNode::input(static_cast<std::uint32_t>(k)), k, "z" + s);
    if (k == 1) {
      y.push_back(z);
      continue;
    }
    const NodeIndex carry = push(ArithNode::mul(c_rho, y.back()), k, "carry" + s);
    const NodeIndex noise = push(ArithNode::mul(c_eps, z), k, "noise" + s);
    y.push_back(push(ArithNode::add(carry, noise), k, "y" + s));
  }
  const std::size_t first_summary = nodes.size();
  std::vector<NodeIndex> terms;
  for (std::size_t k = 0; k < n; ++k) {
    const std::string s = std::to_string(k + 1);
    const NodeIndex a = push(ArithNode::constant(alpha[k]), 0, "alpha" + s);
    terms.push_back(push(ArithNode::mul(a, y[k]), 0, "term" + s));
  }
  NodeIndex sum = terms[0];
  for (std::size_t k = 1; k < n; ++k) sum = push(ArithNode::add(sum, terms[k]), 0, "sum" + std::to_string(k + 1));
  const NodeIndex out = push(ArithNode::mul(sum, sum), 0, "square");

  std::vector<Tuple> raw;
  for (NodeIndex u = 0; u < nodes.size(); ++u) {
    raw.push_back({u});
    for (NodeIndex v = 0; v <= u; ++v) {
      const bool summary = u >= first_summary || v >= first_summary;
      const bool global = pos[u] == 0 || pos[v] == 0;
      const std::size_t gap = pos[u] > pos[v] ? pos[u] - pos[v] : pos[v] - pos[u];
      if (summary || global || gap <= 1) raw.push_back({u, v});
    }
  }
  ArithCircuit c(std::move(nodes), static_cast<std::uint32_t>(n), out, std::move(names));
  return {std::move(c), ArgumentSet(std::move(raw)), std::move(y)};
}

struct NegativeSquareParams {
  std::size_t n = 5;          // chain length (d82_chain)
  double rho = 0.9;           // adjacent covariance
  double kappa4 = 100.0;      // fourth cumulant (d81_kappa6)
  double coefficient = 100.0; // c in (c X - X^3)^2 (d81_kappa6)
  std::size_t matrix_size = 6;  // d83_permanent
  Seed seed{2024};              // d83_permanent
};

inline const std::vector<std::string>& negative_square_families() {
  static const std::vector<std::string> f = {"d81_missing_cov", "d81_kappa6", "d82_chain", "d83_permanent"};
  return f;
}

// Instantiates the named construction and evaluates it. Circuit families run
// through `h` (which must accept pair arguments; sparse-cov or cumulant).
inline NegativeSquareWitness find_negative_square(const EstimatorHandle& h, const std::string& family,
                                                  const NegativeSquareParams& p = {}) {
  NegativeSquareWitness w;
  w.family = family;
  if (family == "d81_missing_cov" || family == "d82_chain") {
    std::vector<double> alpha;
    if (family == "d81_missing_cov") {
      alpha = {1.0, -2.0, 1.0};
      w.quantity = "E[(X - 2Y + Z)^2]";
    } else {
      if (p.n < 2) throw std::invalid_argument("chain needs n >= 2");
      for (std::size_t k = 0; k < p.n; ++k) alpha.push_back(k % 2 ? -1.0 : 1.0);
      w.quantity = "Var(y1 - y2 + y3 - ...)";
    }
    w.certificate = "expectation of a square";
    const ChainSquare cs = chain_square_circuit(alpha, p.rho);
    const std::vector<ArgumentSet> args = {cs.args};
    w.estimate = h.run(cs.circuit, args).value;
    std::vector<double> var(alpha.size(), 1.0), cov(alpha.size() - 1, p.rho);
    w.repaired = chain_variance(var, cov, alpha);
    w.details = {{"estimator", h.name}, {"circuit", pretty_print(cs.circuit)}, {"args", to_json(cs.args)}};
    return w;
  }
  if (family == "d81_kappa6") {
    // X with kappa_2 = 1, kappa_4 = kappa4, all other cumulants 0.
    const CumulantTable kappa = {{{0, 0}, 1.0}, {{0, 0, 0, 0}, p.kappa4}};
    const double m2 = cumulants_to_moment({0, 0}, kappa);
    const double m4 = cumulants_to_moment({0, 0, 0, 0}, kappa);
    const double m6 = cumulants_to_moment({0, 0, 0, 0, 0, 0}, kappa);
    const double c = p.coefficient;
    w.quantity = "E[(" + detail::format_decimal(c) + " X - X^3)^2]";
    w.certificate = "expectation of a square";
    w.estimate = c * c * m2 - 2 * c * m4 + m6;
    w.details = {{"E[X^2]", m2}, {"E[X^4]", m4}, {"E[X^6]", m6}};
    if (p.kappa4 == 100.0 && c == 100.0) w.printed_value = c * c * m2 - 2 * c * p.kappa4 + m6;
    return w;
  }
  if (family == "d83_permanent") {
    const Eigen::MatrixXd a = random_psd_matrix(p.matrix_size, p.seed);
    std::vector<Permutation> negative;
    Permutation sigma(p.matrix_size);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
      double t = 1.0;
      for (std::size_t i = 0; i < sigma.size(); ++i)
        t *= a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(sigma[i]));
      if (t < 0.0) negative.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    w.quantity = "perm(A) for A = V^T V";
    w.certificate = "permanent of a positive semi-definite matrix";
    w.estimate = perm_subset(a, negative);
    w.details = {{"matrix_size", p.matrix_size}, {"seed", p.seed.value},
                 {"permutations_used", negative.size()}, {"perm_exact", perm_exact(a)}};
    return w;
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Series demonstrations

enum class ValueLaw { FairSign, TwoOrMinusOne };  // +-1 fair; +2 w.p. 1/3 else -1

struct SeriesInstance {
  double s = 2.0 / 3.0;
  std::size_t N = 100000;
  ValueLaw law = ValueLaw::FairSign;
  Seed seed;
};

inline void check_instance(const SeriesInstance& inst) {
  if (!(inst.s > 0.5 && inst.s < 1.0)) throw std::invalid_argument("exponent s must lie in (1/2, 1)");
  if (inst.N < 1) throw std::invalid_argument("series needs N >= 1");
}

// f(1..N) from the seeded stream; index 0 unused.
inline std::vector<int> series_values(const SeriesInstance& inst) {
  Stream rng(inst.seed);
  std::vector<int> f(inst.N + 1, 0);
  for (std::size_t x = 1; x <= inst.N; ++x)
    f[x] = inst.law == ValueLaw::FairSign ? (rng.bit() ? 1 : -1) : (rng.uniform() < 1.0 / 3.0 ? 2 : -1);
  return f;
}

// Neumaier compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

struct TrajectoryRow {
  std::size_t step = 0;
  std::size_t x = 0;
  double term = 0.0;
  double estimate = 0.0;
  double true_partial = 0.0;  // sum of all terms with index <= x
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  double true_sum = 0.0;
  double final_estimate() const { return rows.empty() ? 0.0 : rows.back().estimate; }

  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "step,x_revealed,term,estimate,true_partial\n";
    for (const auto& r : rows) os << r.step << ',' << r.x << ',' << r.term << ',' << r.estimate << ',' << r.true_partial << '\n';
    return os.str();
  }
};

enum class CherryPick { PositiveOnly, NegativeOnly, Prefix };

// The estimator starts at 0 and each revealed term adds its exact value.
inline Trajectory cherrypick_series(std::span<const int> f, double s, CherryPick strategy) {
  const std::size_t n = f.size() - 1;
  std::vector<double> prefix(n + 1, 0.0);
  CompensatedSum total;
  for (std::size_t x = 1; x <= n; ++x) {
    total.add(f[x] / std::pow(static_cast<double>(x), s));
    prefix[x] = total.value();
  }
  Trajectory t;
  t.true_sum = total.value();
  CompensatedSum est;
  std::size_t step = 0;
  for (std::size_t x = 1; x <= n; ++x) {
    if (strategy == CherryPick::PositiveOnly && f[x] <= 0) continue;
    if (strategy == CherryPick::NegativeOnly && f[x] >= 0) continue;
    const double term = f[x] / std::pow(static_cast<double>(x), s);
    est.add(term);
    t.rows.push_back({++step, x, term, est.value(), prefix[x]});
  }
  if (strategy == CherryPick::Prefix && !t.rows.empty()) t.rows.back().estimate = t.true_sum;
  return t;
}

inline Trajectory cherrypick_series(const SeriesInstance& inst, CherryPick strategy) {
  check_instance(inst);
  const auto f = series_values(inst);
  return cherrypick_series(f, inst.s, strategy);
}

// (2 - 2^s) / 3^s: growth rate of the debate estimate against sum_{i<=k} i^-s.
inline double debate_closed_form(double s) { return (2.0 - std::pow(2.0, s)) / std::pow(3.0, s); }

struct DebateResult {
  Trajectory trajectory;  // one row per argument, maximizer first
  double coefficient = 0.0;  // fitted growth coefficient
};

// Alternates the maximizer's best argument (the unused +2 term with smallest
// x) and the minimizer's (the unused -1 term with smallest x).
inline DebateResult debate_series(const SeriesInstance& inst, std::size_t rounds) {
  check_instance(inst);
  if (inst.law != ValueLaw::TwoOrMinusOne) throw std::invalid_argument("debate needs the +2/-1 law");
  const auto f = series_values(inst);
  std::vector<std::size_t> pos, neg;
  for (std::size_t x = 1; x <= inst.N; ++x) (f[x] > 0 ? pos : neg).push_back(x);
  if (rounds > pos.size() || rounds > neg.size())
    throw std::out_of_range("not enough terms of each sign for " + std::to_string(rounds) + " rounds");
  DebateResult r;
  CompensatedSum total, est;
  for (std::size_t x = 1; x <= inst.N; ++x) total.add(f[x] / std::pow(static_cast<double>(x), inst.s));
  r.trajectory.true_sum = total.value();
  std::vector<double> after_round(rounds);
  std::size_t step = 0;
  for (std::size_t k = 0; k < rounds; ++k) {
    for (std::size_t x : {pos[k], neg[k]}) {
      const double term = f[x] / std::pow(static_cast<double>(x), inst.s);
      est.add(term);
      r.trajectory.rows.push_back({++step, x, term, est.value(), std::numeric_limits<double>::quiet_NaN()});
    }
    after_round[k] = est.value();
  }
  // Least-squares slope of the estimate against H_k = sum_{i<=k} i^-s over
  // the last 90% of rounds.
  if (rounds >= 10) {
    double h = 0.0;
    std::vector<double> hk(rounds);
    for (std::size_t k = 0; k < rounds; ++k) hk[k] = (h += std::pow(static_cast<double>(k + 1), -inst.s));
    const std::size_t from = rounds / 10;
    double mx = 0, my = 0;
    const double cnt = static_cast<double>(rounds - from);
    for (std::size_t k = from; k < rounds; ++k) mx += hk[k], my += after_round[k];
    mx /= cnt, my /= cnt;
    double sxy = 0, sxx = 0;
    for (std::size_t k = from; k < rounds; ++k) {
      sxy += (hk[k] - mx) * (after_round[k] - my);
      sxx += (hk[k] - mx) * (hk[k] - mx);
    }
    r.coefficient = sxy / sxx;
  }
  return r;
}

// Mean fitted coefficient over `ensemble` independent series.
inline double debate_growth_coefficient(double s, std::size_t N, std::size_t rounds, Seed seed,
                                        std::size_t ensemble = 16) {
  double sum = 0.0;
  for (std::size_t e = 0; e < ensemble; ++e) {
    SeriesInstance inst{s, N, ValueLaw::TwoOrMinusOne, child_seed(seed, e)};
    sum += debate_series(inst, rounds).coefficient;
  }
  return sum / static_cast<double>(ensemble);
}

inline double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// E[clamp(m + R)] for R ~ N(0, v).
inline double expected_clamp(double m, double v) {
  if (v <= 0.0) return clamp_unit(m);
  const double sd = std::sqrt(v);
  const boost::math::normal_distribution<double> z;
  const double a = (-1.0 - m) / sd, b = (1.0 - m) / sd;
  const double pa = boost::math::cdf(z, a), pb = boost::math::cdf(z, b);
  const double mid = m * (pb - pa) - sd * (boost::math::pdf(z, b) - boost::math::pdf(z, a));
  return -pa + (1.0 - pb) + mid;
}

// Reflection-principle bound on the chance that a later partial sum of a
// centered Gaussian walk with total variance `var` ever rises by `gap`.
inline double partial_sum_tail_bound(double gap, double var) {
  const boost::math::normal_distribution<double> z;
  return 2.0 * boost::math::cdf(boost::math::complement(z, gap / std::sqrt(var)));
}

struct InfsupPhase {
  int target = 0;            // -1: drive below -T, +1: drive above +T
  std::size_t revealed = 0;  // total terms revealed when the phase ended
  std::size_t last_x = 0;
  double partial_sum = 0.0;
  double belief = 0.0;       // E[clamp(partial + unrevealed)]
};

struct InfsupLog {
  std::vector<InfsupPhase> phases;
  std::size_t oscillations = 0;  // completed swings from one side to the other
  bool budget_exhausted = false;
};

// Alternately reveals unused negative terms (smallest x first) until the
// revealed sum is below -T, then unused positive terms until it is above +T.
// The estimator's belief about the clamped limit treats unrevealed terms as
// independent with variance x^(-2s).
inline InfsupLog clamped_infsup_demo(double threshold, std::size_t budget, Seed seed, double s = 2.0 / 3.0,
                                     std::size_t max_phases = 64) {
  if (threshold < 0.0) throw std::invalid_argument("threshold must be nonnegative");
  Stream rng(seed);
  std::vector<bool> positive(1, false);  // sign of f(x), generated on demand; index 0 unused
  std::size_t cursor[2] = {1, 1};        // next index to examine for negative / positive terms
  const double total_var = boost::math::zeta(2.0 * s);
  InfsupLog log;
  CompensatedSum sum, revealed_var;
  std::size_t revealed = 0;
  int target = -1;
  for (std::size_t phase = 0; phase < max_phases; ++phase) {
    std::size_t last_x = 0;
    std::size_t& x = cursor[target > 0];
    while (target < 0 ? !(sum.value() < -threshold) : !(sum.value() > threshold)) {
      if (revealed == budget) {
        log.budget_exhausted = true;
        return log;
      }
      for (;; ++x) {
        while (positive.size() <= x) positive.push_back(rng.bit());
        if (positive[x] == (target > 0)) break;
      }
      sum.add(target / std::pow(static_cast<double>(x), s));
      revealed_var.add(std::pow(static_cast<double>(x), -2.0 * s));
      ++revealed;
      last_x = x++;
    }
    const double remaining = std::max(0.0, total_var - revealed_var.value());
    log.phases.push_back({target, revealed, last_x, sum.value(), expected_clamp(sum.value(), remaining)});
    if (phase > 0) ++log.oscillations;
    target = -target;
  }
  return log;
}

}  // namespace heuristic
