#pragma once

#include <cstdint>
#include <vector>

#include "simplex_spectra/simd.hpp"
#include "simplex_spectra/sparse_matrix.hpp"

namespace simplex_spectra {

struct LanczosOptions {
  double tol = 1e-8;            // residual <= tol * max |ritz|
  std::size_t max_iter = 0;     // 0: min(N, 4 (k_bottom + k_top) + 300)
  std::size_t check_every = 10;
  std::uint64_t seed = 0x1a2c05a1d5eedull;
};

// Wanted ends of the spectrum, each ascending:
// bottom = lambda_1..lambda_kb, top = lambda_{N-kt+1}..lambda_N.
struct PartialSpectrum {
  std::vector<double> bottom;
  std::vector<double> top;
  std::vector<double> bottom_residual;
  std::vector<double> top_residual;
  std::size_t iterations = 0;
  double scale = 0.0;  // max |ritz value|
  double max_residual = 0.0;
  bool converged = false;
  bool exhausted = false;  // Krylov space reached N; values exact up to rounding
};

// Lanczos with full (twice classical Gram-Schmidt) reorthogonalisation and
// restarts on breakdown, so repeated eigenvalues are found with multiplicity.
// Never throws on non-convergence: check `converged`.
PartialSpectrum lanczos(const SparseSymmetricMatrix& m, std::size_t k_bottom, std::size_t k_top,
                        const LanczosOptions& opt = {}, const simd::Kernels& k = simd::kernels());

}  // namespace simplex_spectra
