#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bwformal {

/// Deterministic RNG wrapper. mt19937_64 output is fixed by the standard;
/// bounded draws use plain modulo so sequences do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish draw in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// 64-bit FNV-1a, used to derive per-instance seeds from (suite seed, id).
std::uint64_t fnv1a64(const std::string& s);

/// splitmix64 finalizer; whitens seed material.
std::uint64_t mix64(std::uint64_t x);

}  // namespace bwformal
