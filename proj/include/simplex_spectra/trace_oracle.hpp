#pragma once

#include <cstdint>

#include "simplex_spectra/cell_complex.hpp"
#include "simplex_spectra/distribution.hpp"
#include "simplex_spectra/sparse_matrix.hpp"

namespace simplex_spectra {

struct WalkSumOptions {
  std::uint64_t budget = 10'000'000;  // max closed walks C(n,d) (d(n-d))^(2k-1)
  unsigned workers = 1;
  SignRule rule{};
};

// Number of closed walks of length 2k on the (d-1)-faces of K(d, n).
double closed_walk_count(std::size_t d, std::uint32_t n, unsigned k);

// Tr(H^2k) expanded over closed walks sigma_1 .. sigma_2k sigma_1.
// realized == nullptr: exact E Tr(H^2k) for entries sign (Z - EZ) / sqrt(n Var Z),
// using independence across d-cells. Otherwise the walk sum of the given matrix,
// which must be indexed by face rank.
double trace_walk_sum(std::size_t d, std::uint32_t n, const DistributionSpec& spec, unsigned k,
                      const SparseSymmetricMatrix* realized = nullptr, const WalkSumOptions& opt = {});

// E Tr(calA^2k) for Bernoulli(p) by averaging over every complex on K(d, n).
// Needs C(n, d+1) <= 14.
double trace_exhaustive(std::size_t d, std::uint32_t n, double p, unsigned k, SignRule rule = {});

}  // namespace simplex_spectra
