#pragma once

#include <cstdint>
#include <vector>

namespace simplex_spectra {

// Exact C(n, k). Throws CapExceeded if the value does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// log C(n, k); exact path when the value fits, lgamma otherwise.
double log_binomial(std::uint64_t n, std::uint64_t k);

// C(n, k) as a double (may be inexact above 2^53).
double binomial_real(std::uint64_t n, std::uint64_t k);

// Falling factorial n (n-1) ... (n-s+1), throws CapExceeded on overflow.
std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t s);

std::uint64_t factorial(std::uint64_t n);

// Row-major table C(v, j) for v <= n_max, j <= k_max, used by colex ranking.
class BinomialTable {
 public:
  BinomialTable() = default;
  BinomialTable(std::uint32_t n_max, std::uint32_t k_max);

  std::uint64_t operator()(std::uint32_t v, std::uint32_t j) const {
    return j > k_max_ || v > n_max_ ? 0 : table_[static_cast<std::size_t>(v) * (k_max_ + 1) + j];
  }
  std::uint32_t n_max() const { return n_max_; }
  std::uint32_t k_max() const { return k_max_; }

 private:
  std::uint32_t n_max_ = 0;
  std::uint32_t k_max_ = 0;
  std::vector<std::uint64_t> table_;
};

}  // namespace simplex_spectra
