#ifndef TAXO_RNG_HPP
#define TAXO_RNG_HPP

#include <cstdint>

namespace taxo {

// SplitMix64. Small, fast, and fully specified, so seeded runs produce the
// same stream on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t next_below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased and reproducible.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream seed from a base seed and stream labels;
// used to give every (k, restart) pair its own reproducible generator.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0) {
  SplitMix64 mix(base ^ (a * 0x9e3779b97f4a7c15ULL) ^
                 (b * 0xc2b2ae3d27d4eb4fULL));
  mix.next();
  return mix.next();
}

}  // namespace taxo

#endif
