#pragma once

#include <cstdint>

namespace simplex_spectra {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Stateless counter-based stream: value t depends only on (seed, t), so
// draws for a given cell rank never depend on visiting order or threads.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t bits(std::uint64_t counter) const;
  // 53-bit uniform in [0, 1)
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

// Seed for trial `index` of a run with master seed `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace simplex_spectra
