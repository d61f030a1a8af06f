#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bam {

/// splitmix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`.  Streams for distinct indices are
/// independent for all practical purposes, so ensemble results never depend
/// on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Thin wrapper over mt19937_64 with platform-independent variate generation
/// (the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential() { return -std::log(uniform()); }

  /// Uniform integer in [0, n).
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(((eng_() >> 32) * static_cast<std::uint64_t>(n)) >> 32);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bam
