#ifndef IMCA_RNG_HPP
#define IMCA_RNG_HPP

#include <cstdint>

namespace imca {

// splitmix64; used instead of <random> so seeded runs are byte-identical
// across standard libraries.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n); n > 0
  uint64_t below(uint64_t n) { return next() % n; }

  uint32_t below32(uint32_t n) { return static_cast<uint32_t>(below(n)); }

  bool coin() { return (next() & 1) != 0; }

private:
  uint64_t state_;
};

} // namespace imca

#endif
