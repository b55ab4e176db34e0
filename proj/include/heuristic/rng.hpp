#pragma once

// Seeded, platform-independent random streams.
//
// Streams are std::mt19937_64 engines (bit-exact by the standard). Child streams
// are derived as mix(parent, index) with the SplitMix64 finalizer, so any shard
// of a computation can be regenerated from (seed, stream index) alone. Doubles
// are built from the top 53 bits; normals use the inverse CDF.

#include <cstdint>
#include <random>

#include <boost/math/special_functions/erf.hpp>

namespace heuristic {

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr Seed child_seed(Seed parent, std::uint64_t stream) noexcept {
  return Seed{splitmix64(splitmix64(parent.value) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))};
}

class Stream {
 public:
  explicit Stream(Seed seed) : engine_(splitmix64(seed.value)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1); never returns an endpoint.
  double open_uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  bool bit() { return (engine_() >> 63) != 0; }

  // Uniform integer in [0, n) by rejection, n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  double normal() {
    const double u = open_uniform();
    return -1.4142135623730950488 * boost::math::erfc_inv(2.0 * u);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace heuristic
