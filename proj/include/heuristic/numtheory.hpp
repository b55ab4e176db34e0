#pragma once

// Probabilistic number-theory estimates with exact oracles: twin primes,
// prime density, the Fermat-equation probability with its corrections, the
// cubic parametrization identity, and Euler's fourth-power counterexample.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace heuristic {

// Hardy-Littlewood twin prime constant.
inline constexpr double kTwinPrimeConstant = 0.660161815846869573927812110014555778;

class SieveTable {
 public:
  static constexpr std::uint64_t kMaxLimit = 4'000'000'000ULL;

  explicit SieveTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 3) throw std::invalid_argument("sieve limit must be at least 3");
    if (limit > kMaxLimit) throw std::length_error("sieve limit exceeds the memory budget");
    composite_.assign(limit + 1, false);
    composite_[0] = composite_[1] = true;
    for (std::uint64_t p = 2; p * p <= limit; ++p)
      if (!composite_[p])
        for (std::uint64_t q = p * p; q <= limit; q += p) composite_[q] = true;
  }

  std::uint64_t limit() const noexcept { return limit_; }
  bool is_prime(std::uint64_t x) const {
    if (x > limit_) throw std::out_of_range("query beyond sieve limit");
    return !composite_[x];
  }

 private:
  std::uint64_t limit_;
  std::vector<bool> composite_;
};

inline SieveTable sieve(std::uint64_t limit) { return SieveTable(limit); }

// #{x <= N - 2 : x and x + 2 both prime}.
inline std::uint64_t count_twin_pairs(const SieveTable& t) {
  std::uint64_t c = 0;
  for (std::uint64_t x = 2; x + 2 <= t.limit(); ++x)
    if (t.is_prime(x) && t.is_prime(x + 2)) ++c;
  return c;
}

// N / ln^2 N: each of x and x + 2 prime with probability 1/ln N, independently.
inline double twin_prime_naive(double n) {
  const double l = std::log(n);
  return n / (l * l);
}

// 2 C2 N / ln^2 N.
inline double twin_prime_corrected_closed(double n) { return 2.0 * kTwinPrimeConstant * twin_prime_naive(n); }

// int_lo^hi dt / ln^2 t, integrated in s = ln t.
inline double inverse_log_square_integral(double lo, double hi) {
  if (hi <= lo) return 0.0;
  auto f = [](double s) { return std::exp(s) / (s * s); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, std::log(lo), std::log(hi), 20,
                                                                        1e-13);
}

// 2 C2 int_2^N dt / ln^2 t.
inline double twin_prime_corrected(double n) {
  return 2.0 * kTwinPrimeConstant * inverse_log_square_integral(2.0, n);
}

inline double twin_prime_estimate(double n, bool corrected) {
  if (n < 10) throw std::invalid_argument("twin prime estimate needs N >= 10");
  return corrected ? twin_prime_corrected(n) : twin_prime_naive(n);
}

struct TwinInterval {
  double mean = 0.0;
  double poisson_pmf(unsigned k) const {
    if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
    return boost::math::pdf(boost::math::poisson_distribution<double>(mean), k);
  }
};

// Expected twin pairs with x in (lo, hi]: sum of 1 / ln^2 x, treated as Poisson.
inline TwinInterval twin_interval_estimate(std::uint64_t lo, std::uint64_t hi) {
  if (lo <= 2 || hi < lo) throw std::invalid_argument("interval needs 2 < lo <= hi");
  double s = 0.0;
  for (std::uint64_t x = lo + 1; x <= hi; ++x) {
    const double l = std::log(static_cast<double>(x));
    s += 1.0 / (l * l);
  }
  return {s};
}

struct PrimeDensity {
  double product = 1.0;          // prod_{p < x} (1 - 1/p)
  double ratio_to_inverse_log = 0.0;  // product * ln x
};

inline PrimeDensity prime_density_product(std::uint64_t x) {
  if (x < 3) throw std::invalid_argument("prime density needs x >= 3");
  const SieveTable t(x);
  PrimeDensity d;
  for (std::uint64_t p = 2; p < x; ++p)
    if (t.is_prime(p)) d.product *= 1.0 - 1.0 / static_cast<double>(p);
  d.ratio_to_inverse_log = d.product * std::log(static_cast<double>(x));
  return d;
}

// ---------------------------------------------------------------------------
// a^n + b^n = c^n

struct FltCase {
  bool solution = false;
  std::uint64_t b = 0, c = 0;
  bool verified_none() const { return !solution; }
};

namespace detail {

using u128 = unsigned __int128;

inline bool checked_pow(std::uint64_t base, unsigned n, u128& out) {
  u128 r = 1;
  const u128 limit = ~u128{0} >> 1;
  for (unsigned i = 0; i < n; ++i) {
    if (base != 0 && r > limit / base) return false;
    r *= base;
  }
  out = r;
  return true;
}

// Largest r with r^n <= x.
inline std::uint64_t integer_root(u128 x, unsigned n) {
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(x), 1.0L / n));
  u128 p;
  while (r > 0 && (!checked_pow(r, n, p) || p > x)) --r;
  while (checked_pow(r + 1, n, p) && p <= x) ++r;
  return r;
}

}  // namespace detail

// Searches b in [1, a] for a^n + b^n = c^n with exact 128-bit arithmetic.
inline FltCase flt_check_case(unsigned n, std::uint64_t a) {
  if (n < 1) throw std::invalid_argument("exponent must be positive");
  detail::u128 an = 0;
  if (!detail::checked_pow(a, n, an) || an > (~detail::u128{0} >> 2))
    throw std::overflow_error("a^n does not fit in 128-bit arithmetic");
  for (std::uint64_t b = 1; b <= a; ++b) {
    detail::u128 bn = 0;
    detail::checked_pow(b, n, bn);
    const detail::u128 x = an + bn;
    const std::uint64_t c = detail::integer_root(x, n);
    detail::u128 cn = 0;
    if (detail::checked_pow(c, n, cn) && cn == x) return {true, b, c};
  }
  return {false, 0, 0};
}

// Ratio of the residue-aware chance that x = a^n + b^n and x = c^n agree mod p
// to the residue-blind chance. Sums a^n + b^n are taken over residue pairs
// (a, b) not both divisible by p; c^n over all residues.
inline double residue_correction(unsigned n, unsigned p) {
  if (p < 2) throw std::invalid_argument("modulus must be prime");
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("modulus must be prime");
  auto power_mod = [&](unsigned x) {
    unsigned long long r = 1;
    for (unsigned i = 0; i < n; ++i) r = r * x % p;
    return static_cast<unsigned>(r);
  };
  std::vector<unsigned long long> powers(p, 0), sums(p, 0);
  for (unsigned c = 0; c < p; ++c) ++powers[power_mod(c)];
  for (unsigned a = 0; a < p; ++a)
    for (unsigned b = 0; b < p; ++b)
      if (a != 0 || b != 0) ++sums[(power_mod(a) + power_mod(b)) % p];
  unsigned long long hits = 0;
  for (unsigned r = 0; r < p; ++r) hits += sums[r] * powers[r];
  const unsigned long long pairs = static_cast<unsigned long long>(p) * p - 1;
  // (hits / (pairs * p)) * p, as a single rounding.
  return static_cast<double>(hits) / static_cast<double>(pairs);
}

// Ratio of the density-weighted count of coincidences in (a^n, 2a^n] to the
// uniform count (2^(1/n) - 1) / a^(n-2); independent of a. With
// x = a^n (1 + t^n) the integral becomes n * int_0^1 (1 + t^n)^(-(n-1)/n) dt
// after scaling.
inline double density_correction(unsigned n) {
  if (n < 2) throw std::invalid_argument("density correction needs n >= 2");
  const double dn = n;
  auto f = [dn](double t) { return std::pow(1.0 + std::pow(t, dn), -(dn - 1.0) / dn); };
  const double j = dn * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
  return j / (dn * dn * (std::pow(2.0, 1.0 / dn) - 1.0));
}

struct FltConfig {
  unsigned n = 4;
  std::uint64_t a_max = 1'000'000;
  std::vector<std::uint64_t> small_cases;  // values of a settled by exact search
  bool coprime = false;
  bool density_integral = false;
  std::vector<unsigned> mod_primes;
  std::size_t breakdown_limit = 64;  // per-a entries kept for a <= this
};

struct FltResult {
  double probability = 0.0;
  double expected_count = 0.0;  // sum of P_a over the truncated range
  double tail_bound = 0.0;      // bound on the neglected sum of P_a beyond a_max
  double factor = 1.0;          // product of enabled multiplicative corrections
  bool divergent = false;       // sum of P_a diverges: probability 1
  std::vector<std::pair<std::uint64_t, double>> breakdown;  // (a, P_a)
};

// 1 - prod_a (1 - P_a) with P_a = floor((2^(1/n) - 1) a) / a^(n-1), times the
// enabled corrections. For n <= 3 the expected count diverges and the
// probability is 1.
inline FltResult flt_probability(const FltConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("exponent must be at least 2");
  if (cfg.a_max < 2) throw std::invalid_argument("a_max must be at least 2");
  FltResult r;
  if (cfg.coprime) r.factor *= 6.0 / (std::numbers::pi * std::numbers::pi);
  if (cfg.density_integral) r.factor *= density_correction(cfg.n);
  for (unsigned p : cfg.mod_primes) r.factor *= residue_correction(cfg.n, p);

  std::map<std::uint64_t, bool> settled;
  for (std::uint64_t a : cfg.small_cases) settled[a] = flt_check_case(cfg.n, a).solution;

  const double c = std::pow(2.0, 1.0 / cfg.n) - 1.0;
  const double dn = cfg.n;
  if (cfg.n <= 3) {
    r.divergent = true;
    r.probability = 1.0;
    r.tail_bound = std::numeric_limits<double>::infinity();
  }
  double log_none = 0.0;
  for (std::uint64_t a = 2; a <= cfg.a_max; ++a) {
    double pa = std::floor(c * static_cast<double>(a)) / std::pow(static_cast<double>(a), dn - 1.0);
    pa = std::min(1.0, pa * r.factor);
    if (auto it = settled.find(a); it != settled.end()) pa = it->second ? 1.0 : 0.0;
    r.expected_count += pa;
    if (a <= cfg.breakdown_limit) r.breakdown.emplace_back(a, pa);
    log_none += pa >= 1.0 ? -std::numeric_limits<double>::infinity() : std::log1p(-pa);
    // Stop early once the remaining tail cannot matter in double precision.
    if (cfg.n > 3 && (a & 1023) == 0) {
      const double tail = r.factor * c * std::pow(static_cast<double>(a), 3.0 - dn) / (dn - 3.0);
      if (tail < 1e-17 * std::max(r.expected_count, 1e-300)) break;
    }
  }
  if (cfg.n > 3)
    r.tail_bound = r.factor * c * std::pow(static_cast<double>(cfg.a_max), 3.0 - dn) / (dn - 3.0);
  if (!r.divergent) r.probability = -std::expm1(log_none);
  for (const auto& [a, sol] : settled)
    if (sol) r.probability = 1.0;
  return r;
}

// Probability of a solution for some exponent in [n_from, n_to].
inline double flt_probability_range(unsigned n_from, unsigned n_to, FltConfig cfg) {
  double log_none = 0.0;
  for (unsigned n = n_from; n <= n_to; ++n) {
    cfg.n = n;
    const double p = flt_probability(cfg).probability;
    if (p >= 1.0) return 1.0;
    log_none += std::log1p(-p);
  }
  return -std::expm1(log_none);
}

// One row of the correction table: base, then each correction applied on top
// of the previous ones.
struct FltChain {
  unsigned n = 4;
  double base = 0, small_cases = 0, coprime = 0, density = 0, mod5 = 0;
};

inline FltChain flt_correction_chain(unsigned n, std::uint64_t a_max = 1'000'000,
                                     std::vector<std::uint64_t> small_cases = {6}) {
  FltConfig cfg;
  cfg.n = n;
  cfg.a_max = a_max;
  FltChain row;
  row.n = n;
  row.base = flt_probability(cfg).probability;
  cfg.small_cases = std::move(small_cases);
  row.small_cases = flt_probability(cfg).probability;
  cfg.coprime = true;
  row.coprime = flt_probability(cfg).probability;
  cfg.density_integral = true;
  row.density = flt_probability(cfg).probability;
  cfg.mod_primes = {5};
  row.mod5 = flt_probability(cfg).probability;
  return row;
}

// ---------------------------------------------------------------------------
// Exact identities

using BigInt = boost::multiprecision::cpp_int;

// Polynomial in a and b with big-integer coefficients, keyed by (deg a, deg b).
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(BigInt c, unsigned da, unsigned db) {
    if (c != 0) t_[{da, db}] = std::move(c);
  }

  const std::map<std::pair<unsigned, unsigned>, BigInt>& terms() const noexcept { return t_; }
  bool is_zero() const noexcept { return t_.empty(); }

  friend BiPoly operator+(BiPoly x, const BiPoly& y) {
    for (const auto& [k, c] : y.t_) x.add(k, c);
    return x;
  }
  friend BiPoly operator-(BiPoly x, const BiPoly& y) {
    for (const auto& [k, c] : y.t_) x.add(k, -c);
    return x;
  }
  friend BiPoly operator*(const BiPoly& x, const BiPoly& y) {
    BiPoly r;
    for (const auto& [kx, cx] : x.t_)
      for (const auto& [ky, cy] : y.t_) r.add({kx.first + ky.first, kx.second + ky.second}, cx * cy);
    return r;
  }
  friend bool operator==(const BiPoly&, const BiPoly&) = default;

  BigInt evaluate(const BigInt& a, const BigInt& b) const {
    BigInt s = 0;
    for (const auto& [k, c] : t_) s += c * boost::multiprecision::pow(a, k.first) * boost::multiprecision::pow(b, k.second);
    return s;
  }

 private:
  void add(std::pair<unsigned, unsigned> k, const BigInt& c) {
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) it->second += c;
    if (it->second == 0) t_.erase(it);
  }
  std::map<std::pair<unsigned, unsigned>, BigInt> t_;
};

inline BiPoly cube(const BiPoly& p) { return p * p * p; }

struct CubicIdentitySides {
  BiPoly lhs, rhs;  // rhs with c^3 replaced by a^3 + b^3
};

// (u)^3 + (v)^3 = (3abc w)^3 for a solution of a^3 + b^3 = c^3. `as_printed`
// selects the transcription that lists 6a^3b^3 + 3b^3a^6 and w = a^6 + a^3b^3 + b^3;
// otherwise u = a^9 + 6a^6b^3 + 3a^3b^6 - b^9 and w = a^6 + a^3b^3 + b^6.
inline CubicIdentitySides cubic_identity_sides(bool as_printed = false) {
  const BiPoly u = as_printed ? BiPoly(1, 9, 0) + BiPoly(6, 3, 3) + BiPoly(3, 6, 3) - BiPoly(1, 0, 9)
                              : BiPoly(1, 9, 0) + BiPoly(6, 6, 3) + BiPoly(3, 3, 6) - BiPoly(1, 0, 9);
  const BiPoly v = BiPoly(-1, 9, 0) + BiPoly(3, 6, 3) + BiPoly(6, 3, 6) + BiPoly(1, 0, 9);
  const BiPoly w = as_printed ? BiPoly(1, 6, 0) + BiPoly(1, 3, 3) + BiPoly(1, 0, 3)
                              : BiPoly(1, 6, 0) + BiPoly(1, 3, 3) + BiPoly(1, 0, 6);
  const BiPoly c3 = BiPoly(1, 3, 0) + BiPoly(1, 0, 3);
  return {cube(u) + cube(v), BiPoly(27, 3, 3) * c3 * cube(w)};
}

inline bool verify_cubic_identity_symbolic(bool as_printed = false) {
  const auto s = cubic_identity_sides(as_printed);
  return s.lhs == s.rhs;
}

// Checks the identity at integers (a, b, c); meaningful when a^3 + b^3 = c^3.
inline bool verify_cubic_identity(const BigInt& a, const BigInt& b, const BigInt& c) {
  using boost::multiprecision::pow;
  const BigInt u = pow(a, 9) + 6 * pow(a, 6) * pow(b, 3) + 3 * pow(a, 3) * pow(b, 6) - pow(b, 9);
  const BigInt v = -pow(a, 9) + 3 * pow(a, 6) * pow(b, 3) + 6 * pow(a, 3) * pow(b, 6) + pow(b, 9);
  const BigInt w = 3 * a * b * c * (pow(a, 6) + pow(a, 3) * pow(b, 3) + pow(b, 6));
  return pow(u, 3) + pow(v, 3) == pow(w, 3);
}

// Checks the identity at (a, b) with c^3 replaced by a^3 + b^3.
inline bool verify_cubic_identity_formal(const BigInt& a, const BigInt& b) {
  const auto s = cubic_identity_sides(false);
  return s.lhs.evaluate(a, b) == s.rhs.evaluate(a, b);
}

inline bool euler_check(const BigInt& x, const BigInt& y, const BigInt& z, const BigInt& w) {
  using boost::multiprecision::pow;
  return pow(x, 4) + pow(y, 4) + pow(z, 4) == pow(w, 4);
}

inline bool euler_counterexample_check() { return euler_check(95800, 217519, 414560, 422481); }

}  // namespace heuristic
