#pragma once

#include <cstdint>

namespace peakdomain {

// SplitMix64 finalizer. Pure 64-bit integer arithmetic, so streams are
// identical on every platform and for every thread schedule.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// Per-sample seed: hash(seed, index). Sample i sees the same stream no
// matter how samples are partitioned across workers.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + 0x9e3779b97f4a7c15ull) ^
               (index * 0xda942042e4dd58b5ull + 0x2545f4914f6cdd1dull));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return mix64(state_ += 0x9e3779b97f4a7c15ull); }

  // uniform in [0, 1), 53 random bits
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_double() < p; }

  // uniform integer in [0, bound)
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace peakdomain
