#pragma once

#include <cstdint>

namespace polar {

// Counter-friendly splittable generator. Streams are derived from
// (seed, domain, index) through the finalizer, so trial i's stream is the
// same no matter how trials are distributed over workers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// domain 0: simulation trials, domain 1: Monte Carlo construction
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t domain, std::uint64_t index) {
  std::uint64_t s = SplitMix64::mix(seed ^ (domain << 56)) ^ SplitMix64::mix(index + 1);
  return SplitMix64(SplitMix64::mix(s));
}

}  // namespace polar
