#pragma once

#include <vector>

#include "simplex_spectra/simd.hpp"
#include "simplex_spectra/sparse_matrix.hpp"

namespace simplex_spectra {

// Householder reduction A = Q T Q^T of a symmetric matrix (lower triangle read).
// Reflector k is stored below the subdiagonal of column k with an implicit 1.
struct Tridiagonalization {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] = T(i, i+1)
  DenseMatrix reflectors;
  std::vector<double> tau;
};

Tridiagonalization tridiagonalize(DenseMatrix a, const simd::Kernels& k = simd::kernels());

// Implicit-shift QL. Ascending. Throws ConvergenceError after 60 sweeps on one eigenvalue.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off);

// Ascending eigenvalues together with the last component of each unit eigenvector
// (what Lanczos needs for its residual estimates).
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> last;
};
TridiagonalEigen tridiagonal_eigen_last(std::vector<double> diag, std::vector<double> off);

std::vector<double> dense_eigenvalues(const DenseMatrix& a, const simd::Kernels& k = simd::kernels());

// Unit eigenvector of the original matrix for a computed eigenvalue: inverse
// iteration on T, then the reflectors applied back.
std::vector<double> eigenvector_for(const Tridiagonalization& t, double lambda);

}  // namespace simplex_spectra
