#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "simplex_spectra/cell_complex.hpp"
#include "simplex_spectra/distribution.hpp"
#include "simplex_spectra/sparse_matrix.hpp"

namespace simplex_spectra {

// A draw of X(d, n, p): a bit per candidate d-cell, indexed by colex rank.
// Cell t is present iff uniform(seed, t) < p, so (d, n, p, seed) fixes the bits.
class ComplexSample {
 public:
  ComplexSample(std::size_t d, std::uint32_t n, double p, std::uint64_t seed, std::vector<std::uint64_t> bits);

  std::size_t d() const { return d_; }
  std::uint32_t n() const { return n_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t num_candidates() const { return num_candidates_; }
  const std::vector<std::uint64_t>& bits() const { return bits_; }

  bool present(std::uint64_t cell_rank) const { return (bits_[cell_rank >> 6] >> (cell_rank & 63)) & 1u; }
  std::uint64_t num_present() const;
  std::vector<Cell> present_cells() const;

  void write_binary(std::ostream& os) const;
  static ComplexSample read_binary(std::istream& is);
  std::string to_json() const;
  static ComplexSample from_json(const std::string& text);

  friend bool operator==(const ComplexSample& a, const ComplexSample& b) {
    return a.d_ == b.d_ && a.n_ == b.n_ && a.p_ == b.p_ && a.seed_ == b.seed_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t d_;
  std::uint32_t n_;
  double p_;
  std::uint64_t seed_;
  std::uint64_t num_candidates_;
  std::vector<std::uint64_t> bits_;
};

ComplexSample sample_complex(std::size_t d, std::uint32_t n, double p, std::uint64_t seed);

// Signed adjacency of the sampled complex, entries in {-1, 0, +1}.
SparseSymmetricMatrix build_A(const ComplexSample& x, SignRule rule = {});
// p times the signed adjacency S of the complete complex.
SparseSymmetricMatrix build_expected_A(std::size_t d, std::uint32_t n, double p, SignRule rule = {});
// (A - E[A]) / sqrt(n p (1-p))
SparseSymmetricMatrix build_calA(const ComplexSample& x, SignRule rule = {});

// One draw Z_tau per candidate d-cell; entry sign * (Z - EZ) / sqrt(n Var Z).
SparseSymmetricMatrix build_H(std::size_t d, std::uint32_t n, const DistributionSpec& spec, std::uint64_t seed,
                              SignRule rule = {});
SparseSymmetricMatrix build_H_unsigned(std::size_t d, std::uint32_t n, const DistributionSpec& spec,
                                       std::uint64_t seed);

// Unsigned centred adjacency of X(d, r, p0), entry (chi - p0) / sqrt(q0) on every candidate cell.
SparseSymmetricMatrix build_Y(std::size_t d, std::uint32_t r, double p0, std::uint64_t seed);

}  // namespace simplex_spectra
