#include "simplex_spectra/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& b) const {
  if (cols_ != b.rows_) throw DomainError("dense multiply: shape mismatch");
  DenseMatrix c(rows_, b.cols_);
  const auto& k = simd::kernels();
  for (std::size_t j = 0; j < b.cols_; ++j)
    for (std::size_t l = 0; l < cols_; ++l) {
      const double blj = b(l, j);
      if (blj != 0.0) k.axpy(blj, col(l), c.col(j), rows_);
    }
  return c;
}

double DenseMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

SparseSymmetricMatrix::SparseSymmetricMatrix(std::size_t dim, std::vector<std::uint64_t> row_ptr,
                                             std::vector<std::uint32_t> cols, std::vector<double> vals)
    : dim_(dim), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), vals_(std::move(vals)) {
  if (dim_ > UINT32_MAX) throw CapExceeded("matrix dimension exceeds 32-bit column index");
  if (row_ptr_.size() != dim_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != cols_.size() ||
      cols_.size() != vals_.size())
    throw DomainError("inconsistent CSR arrays");
  for (std::size_t i = 0; i < dim_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) throw DomainError("CSR row pointers decrease");
    for (std::uint64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (cols_[k] >= dim_) throw DomainError("CSR column out of range");
      if (k > row_ptr_[i] && cols_[k] <= cols_[k - 1]) throw DomainError("CSR columns not strictly sorted");
    }
  }
}

SparseSymmetricMatrix SparseSymmetricMatrix::from_triplets(std::size_t dim, std::vector<Triplet> t) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::uint64_t> rp(dim + 1, 0);
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  cols.reserve(t.size());
  vals.reserve(t.size());
  std::size_t k = 0;
  while (k < t.size()) {
    const auto r = t[k].row, c = t[k].col;
    if (r >= dim || c >= dim) throw DomainError("triplet index out of range");
    double v = 0.0;
    while (k < t.size() && t[k].row == r && t[k].col == c) v += t[k++].value;
    if (v == 0.0) continue;
    cols.push_back(static_cast<std::uint32_t>(c));
    vals.push_back(v);
    rp[r + 1]++;
  }
  for (std::size_t i = 0; i < dim; ++i) rp[i + 1] += rp[i];
  SparseSymmetricMatrix m(dim, std::move(rp), std::move(cols), std::move(vals));
  if (!m.is_symmetric()) throw DomainError("triplets do not describe a symmetric matrix");
  return m;
}

SparseSymmetricMatrix SparseSymmetricMatrix::from_dense(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("from_dense: not square");
  std::vector<Triplet> t;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0.0) t.push_back({i, j, a(i, j)});
  return from_triplets(a.rows(), std::move(t));
}

double SparseSymmetricMatrix::at(std::size_t i, std::size_t j) const {
  const auto b = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto e = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(b, e, static_cast<std::uint32_t>(j));
  return it != e && *it == j ? vals_[static_cast<std::size_t>(it - cols_.begin())] : 0.0;
}

void SparseSymmetricMatrix::multiply(const double* x, double* y, const simd::Kernels& k) const {
  k.spmv(dim_, row_ptr_.data(), cols_.data(), vals_.data(), x, y);
}

bool SparseSymmetricMatrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::uint64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      if (std::abs(at(cols_[k], i) - vals_[k]) > tol) return false;
  return true;
}

double SparseSymmetricMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += at(i, i);
  return s;
}

double SparseSymmetricMatrix::frobenius_sq() const {
  double s = 0.0;
  for (double v : vals_) s += v * v;
  return s;
}

double SparseSymmetricMatrix::gershgorin_bound() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (std::uint64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += std::abs(vals_[k]);
    m = std::max(m, s);
  }
  return m;
}

DenseMatrix SparseSymmetricMatrix::to_dense() const {
  DenseMatrix a(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::uint64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) a(i, cols_[k]) = vals_[k];
  return a;
}

SparseSymmetricMatrix SparseSymmetricMatrix::scaled(double c) const {
  SparseSymmetricMatrix m = *this;
  for (double& v : m.vals_) v *= c;
  return m;
}

}  // namespace simplex_spectra
