#pragma once

#include <cstdint>
#include <vector>

#include "simplex_spectra/simd.hpp"

namespace simplex_spectra {

// Column-major dense matrix. Only used for small or capped sizes.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[j * rows_ + i]; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  double* col(std::size_t j) { return a_.data() + j * rows_; }
  const double* col(std::size_t j) const { return a_.data() + j * rows_; }

  DenseMatrix operator*(const DenseMatrix& other) const;
  double trace() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// Symmetric matrix stored as full CSR (both triangles), columns sorted per row.
class SparseSymmetricMatrix {
 public:
  struct Triplet {
    std::uint64_t row;
    std::uint64_t col;
    double value;
  };

  SparseSymmetricMatrix() : row_ptr_(1, 0) {}
  SparseSymmetricMatrix(std::size_t dim, std::vector<std::uint64_t> row_ptr, std::vector<std::uint32_t> cols,
                        std::vector<double> vals);

  // Sorts and sums duplicates; drops explicit zeros. Throws if not symmetric.
  static SparseSymmetricMatrix from_triplets(std::size_t dim, std::vector<Triplet> t);
  static SparseSymmetricMatrix from_dense(const DenseMatrix& a);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return vals_.size(); }
  const std::vector<std::uint64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& cols() const { return cols_; }
  const std::vector<double>& values() const { return vals_; }

  double at(std::size_t i, std::size_t j) const;

  void multiply(const double* x, double* y) const { multiply(x, y, simd::kernels()); }
  void multiply(const double* x, double* y, const simd::Kernels& k) const;

  bool is_symmetric(double tol = 0.0) const;
  double trace() const;
  double frobenius_sq() const;
  // max row abs sum, an upper bound on the spectral norm
  double gershgorin_bound() const;

  DenseMatrix to_dense() const;
  SparseSymmetricMatrix scaled(double c) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> vals_;
};

}  // namespace simplex_spectra
