#pragma once

#include <cstdint>
#include <iterator>
#include <random>
#include <utility>

namespace vqco {

/// SplitMix64 finalizer. Used to whiten user seeds and to derive child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds extra words into a seed, order-sensitive:
///   h0 = splitmix64(seed), h(k+1) = splitmix64(h(k) ^ word_k).
template <class... Words>
constexpr std::uint64_t derive_seed(std::uint64_t seed, Words... words) noexcept {
  std::uint64_t h = splitmix64(seed);
  ((h = splitmix64(h ^ static_cast<std::uint64_t>(words))), ...);
  return h;
}

/// Project random source, algorithm version 1.
///
/// The engine is std::mt19937_64 seeded with splitmix64(seed). Its output
/// sequence is fixed by the C++ standard. The std::*_distribution adapters are
/// implementation-defined, so all variates are produced by the helpers below
/// and are therefore identical on every platform.
class Rng {
 public:
  static constexpr int kVersion = 1;

  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1], realized as 1 - uniform01().
  double uniform_open_closed() { return 1.0 - uniform01(); }

  /// Unbiased integer in [0, bound) by rejection. bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Fisher-Yates, last element first.
  template <class RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    auto n = static_cast<std::uint64_t>(std::distance(first, last));
    for (; n > 1; --n) {
      const auto k = below(n);
      using std::swap;
      swap(first[static_cast<std::ptrdiff_t>(n - 1)], first[static_cast<std::ptrdiff_t>(k)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vqco
