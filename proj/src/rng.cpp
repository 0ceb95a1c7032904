#include "simplex_spectra/rng.hpp"

namespace simplex_spectra {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  // two rounds so that nearby seeds and nearby counters decorrelate
  return mix64(mix64(seed_) + 0x9e3779b97f4a7c15ull * (counter + 1));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ 0x6a09e667f3bcc909ull) ^ mix64(0xbb67ae8584caa73bull + index * 0x9e3779b97f4a7c15ull);
}

}  // namespace simplex_spectra
