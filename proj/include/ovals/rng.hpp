// Seeded, portable randomness.
//
// All Monte Carlo drivers derive one independent engine per sample index from
// a root seed, so results are identical for any worker count and any
// completion order. The generator is std::mt19937_64 (bit-portable across
// platforms per the standard); uniform doubles are produced from the high 53
// bits rather than std::uniform_real_distribution, whose output is not
// pinned down by the standard.
#pragma once

#include <cstdint>
#include <random>

namespace ovals {

// splitmix64 step; the standard remedy for correlated mt19937 seeding
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// collapse (root seed, sample index) into one well-mixed 64-bit seed
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t s = root;
  (void)splitmix64(s);
  s ^= 0x632be59bd9b4e019ULL * (index + 1);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0,1)
  double uniform() {
    return double(engine_() >> 11) * 0x1.0p-53;
  }
  // uniform in [a,b)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // uniform over {0,...,n-1} by rejection (unbiased)
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ovals
