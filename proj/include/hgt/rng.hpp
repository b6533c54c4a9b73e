#pragma once

#include <cstdint>
#include <random>

namespace hgt {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 step; stable across platforms.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// mt19937_64 engine with hand-rolled draws so results do not depend on
// implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform integer in [0, bound), bound >= 1. Rejection keeps it unbiased.
  int below(int bound) {
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return static_cast<int>(x % b);
  }

  double unit() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hgt
