#include "simplex_spectra/simd.hpp"

namespace simplex_spectra::simd {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy2(double a, const double* x, double b, const double* y, double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] += a * x[i] + b * y[i];
}

double dot_axpy(const double* col, const double* x, double a, double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += col[i] * x[i];
    y[i] += a * col[i];
  }
  return s;
}

void scal(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void multi_dot(const double* q, std::size_t ld, std::size_t m, const double* w, double* c, std::size_t n) {
  for (std::size_t r = 0; r < m; ++r) c[r] = dot(q + r * ld, w, n);
}

void multi_axpy(const double* q, std::size_t ld, std::size_t m, const double* c, double* w, std::size_t n) {
  for (std::size_t r = 0; r < m; ++r) axpy(-c[r], q + r * ld, w, n);
}

void spmv(std::size_t rows, const std::uint64_t* row_ptr, const std::uint32_t* cols, const double* vals,
          const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::uint64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += vals[k] * x[cols[k]];
    y[i] = s;
  }
}

const Kernels table{Isa::Scalar, "scalar", dot, axpy, axpy2, dot_axpy, scal, multi_dot, multi_axpy, spmv};

}  // namespace

const Kernels& scalar_kernels() { return table; }

}  // namespace simplex_spectra::simd
