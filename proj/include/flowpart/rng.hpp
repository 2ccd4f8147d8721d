#pragma once

#include <cstdint>
#include <random>

namespace flowpart {

// Seeded randomness, scheme "rng-v1".
//
// Every randomized component draws from its own named substream so that
// adding a feature never shifts the draws of an existing one. A substream is
// an mt19937_64 engine seeded with
//
//   mix(mix(seed ^ (PHI * tag)) ^ (PHI2 * index))
//
// where mix is the splitmix64 finalizer, tag identifies the consumer and
// index separates parallel-safe per-item streams (partition recursion nodes,
// per-partition endpoint draws). Sampling goes through bounded()/unit()
// below instead of <random> distributions, which are not bit-stable across
// standard library implementations.
inline constexpr const char* kRngScheme = "rng-v1";

enum class Stream : std::uint64_t {
  topology = 1,
  weights = 2,
  partition = 3,
  heuristic_endpoints = 4,
  bench_endpoints = 5,
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}
}  // namespace detail

class Rng {
 public:
  explicit Rng(std::uint64_t state) : engine_(state) {}

  static Rng substream(std::uint64_t seed, Stream tag, std::uint64_t index = 0) {
    const std::uint64_t tagged = detail::mix64(seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(tag)));
    return Rng(detail::mix64(tagged ^ (0xD1B54A32D192ED03ull * index)));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n), n >= 1. Lemire's method with rejection; unbiased.
  std::uint64_t bounded(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = -n % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[bounded(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace flowpart
