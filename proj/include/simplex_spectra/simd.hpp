#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace simplex_spectra::simd {

enum class Isa { Scalar, Avx2 };

// Table of hot loops. The scalar entries are the reference; wider variants
// must agree with them up to rounding (FMA and reassociated sums).
struct Kernels {
  Isa isa;
  const char* name;

  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // z += a x + b y
  void (*axpy2)(double a, const double* x, double b, const double* y, double* z, std::size_t n);
  // y += a col, returns col . x   (one pass of a symmetric matvec)
  double (*dot_axpy)(const double* col, const double* x, double a, double* y, std::size_t n);
  void (*scal)(double a, double* x, std::size_t n);
  // c[r] = Q_r . w for the m rows Q_r = q + r * ld
  void (*multi_dot)(const double* q, std::size_t ld, std::size_t m, const double* w, double* c, std::size_t n);
  // w -= sum_r c[r] Q_r
  void (*multi_axpy)(const double* q, std::size_t ld, std::size_t m, const double* c, double* w, std::size_t n);
  // y = M x for a CSR matrix
  void (*spmv)(std::size_t rows, const std::uint64_t* row_ptr, const std::uint32_t* cols, const double* vals,
               const double* x, double* y);
};

const Kernels& scalar_kernels();

bool isa_available(Isa isa);
std::vector<Isa> available_isas();
const Kernels& kernels_for(Isa isa);

// Best kernels for this CPU; SIMPLEX_SPECTRA_ISA=scalar forces the reference path.
const Kernels& kernels();

const char* isa_name(Isa isa);

}  // namespace simplex_spectra::simd
