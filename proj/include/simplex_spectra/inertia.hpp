#pragma once

#include <cstddef>

#include "simplex_spectra/simd.hpp"
#include "simplex_spectra/sparse_matrix.hpp"

namespace simplex_spectra {

struct Inertia {
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t positive = 0;
};

// Sylvester inertia of a symmetric matrix from a Bunch-Kaufman LDL^T
// factorisation (lower triangle read, matrix overwritten). A pivot block below
// `zero_tol` in magnitude is counted as zero.
Inertia ldlt_inertia(DenseMatrix& a, double zero_tol, const simd::Kernels& k = simd::kernels());

struct InertiaCount {
  std::size_t below = 0;  // #{lambda < theta_used}
  double theta_used = 0.0;
  int perturbations = 0;
};

// #{i : lambda_i < theta}. If theta hits an eigenvalue to within factorisation
// tolerance it is nudged upward (reported); gives up after a few tries.
InertiaCount inertia_below(const SparseSymmetricMatrix& m, double theta, const simd::Kernels& k = simd::kernels());

}  // namespace simplex_spectra
