#include "simplex_spectra/binomial.hpp"

#include <cmath>

#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is always integral at this point
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw CapExceeded("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -INFINITY;
  try {
    return std::log(static_cast<double>(binomial(n, k)));
  } catch (const CapExceeded&) {
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    return std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1);
  }
}

double binomial_real(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  try {
    return static_cast<double>(binomial(n, k));
  } catch (const CapExceeded&) {
    return std::exp(log_binomial(n, k));
  }
}

std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t s) {
  if (s > n) return 0;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < s; ++i) {
    r *= (n - i);
    if (r > UINT64_MAX) throw CapExceeded("falling factorial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t factorial(std::uint64_t n) { return falling_factorial(n, n); }

BinomialTable::BinomialTable(std::uint32_t n_max, std::uint32_t k_max)
    : n_max_(n_max), k_max_(k_max), table_((static_cast<std::size_t>(n_max) + 1) * (k_max + 1), 0) {
  const std::size_t w = k_max_ + 1;
  for (std::uint32_t v = 0; v <= n_max_; ++v) {
    table_[v * w] = 1;
    for (std::uint32_t j = 1; j <= k_max_ && j <= v; ++j) {
      const std::uint64_t a = table_[(v - 1) * w + j - 1];
      const std::uint64_t b = j <= v - 1 ? table_[(v - 1) * w + j] : 0;
      if (a > UINT64_MAX - b) throw CapExceeded("binomial table overflows 64 bits");
      table_[v * w + j] = a + b;
    }
  }
}

}  // namespace simplex_spectra
