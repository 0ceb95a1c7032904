#include "simplex_spectra/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

namespace {

void swap_sym_lower(DenseMatrix& a, std::size_t from, std::size_t p, std::size_t q) {
  // symmetric interchange of rows/cols p < q inside the trailing block a(from:, from:)
  const std::size_t n = a.rows();
  for (std::size_t i = q + 1; i < n; ++i) std::swap(a(i, p), a(i, q));
  for (std::size_t j = p + 1; j < q; ++j) std::swap(a(j, p), a(q, j));
  std::swap(a(p, p), a(q, q));
  for (std::size_t j = from; j < p; ++j) std::swap(a(p, j), a(q, j));
}

}  // namespace

Inertia ldlt_inertia(DenseMatrix& a, double zero_tol, const simd::Kernels& kern) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DomainError("ldlt_inertia: matrix not square");
  const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;
  Inertia in;
  std::size_t k = 0;
  std::vector<double> wx(n), wy(n);
  while (k < n) {
    std::size_t kstep = 1, kp = k;
    const double absakk = std::abs(a(k, k));
    std::size_t imax = k;
    double colmax = 0.0;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > colmax) {
        colmax = std::abs(a(i, k));
        imax = i;
      }
    if (std::max(absakk, colmax) <= zero_tol) {
      // whole column negligible: a zero pivot
      ++in.zero;
      ++k;
      continue;
    }
    if (absakk < alpha * colmax) {
      double rowmax = 0.0;
      for (std::size_t j = k; j < imax; ++j) rowmax = std::max(rowmax, std::abs(a(imax, j)));
      for (std::size_t i = imax + 1; i < n; ++i) rowmax = std::max(rowmax, std::abs(a(i, imax)));
      if (absakk * rowmax >= alpha * colmax * colmax) {
        kp = k;
      } else if (std::abs(a(imax, imax)) >= alpha * rowmax) {
        kp = imax;
      } else {
        kp = imax;
        kstep = 2;
      }
    }
    const std::size_t kk = k + kstep - 1;
    if (kp != kk) swap_sym_lower(a, k, kk, kp);

    if (kstep == 1) {
      const double d = a(k, k);
      if (std::abs(d) <= zero_tol) ++in.zero;
      else if (d < 0) ++in.negative;
      else ++in.positive;
      if (d != 0.0) {
        const double* x = a.col(k);
        const double r = 1.0 / d;
        for (std::size_t j = k + 1; j < n; ++j) {
          const double xj = x[j];
          if (xj != 0.0) kern.axpy(-xj * r, x + j, a.col(j) + j, n - j);
        }
      }
    } else {
      const double d11 = a(k, k), d21 = a(k + 1, k), d22 = a(k + 1, k + 1);
      const double det = d11 * d22 - d21 * d21;
      const double scale = std::max({std::abs(d11), std::abs(d21), std::abs(d22)});
      if (std::abs(det) <= zero_tol * scale) {
        ++in.zero;
        if (d11 + d22 < 0) ++in.negative; else ++in.positive;
      } else if (det < 0) {
        ++in.negative;
        ++in.positive;
      } else if (d11 + d22 < 0) {
        in.negative += 2;
      } else {
        in.positive += 2;
      }
      if (det != 0.0) {
        const double* x = a.col(k);
        const double* y = a.col(k + 1);
        for (std::size_t j = k + 2; j < n; ++j) {
          wx[j] = (d22 * x[j] - d21 * y[j]) / det;
          wy[j] = (d11 * y[j] - d21 * x[j]) / det;
        }
        for (std::size_t j = k + 2; j < n; ++j) kern.axpy2(-wx[j], x + j, -wy[j], y + j, a.col(j) + j, n - j);
      }
    }
    k += kstep;
  }
  return in;
}

InertiaCount inertia_below(const SparseSymmetricMatrix& m, double theta, const simd::Kernels& k) {
  const std::size_t n = m.dim();
  const double norm = std::max(m.gershgorin_bound(), std::abs(theta));
  const double eps = std::numeric_limits<double>::epsilon();
  const double zero_tol = std::max(norm, 1.0) * eps * static_cast<double>(std::max<std::size_t>(n, 1));
  InertiaCount out;
  out.theta_used = theta;
  for (int attempt = 0; attempt < 8; ++attempt) {
    DenseMatrix a = m.to_dense();
    for (std::size_t i = 0; i < n; ++i) a(i, i) -= out.theta_used;
    const Inertia in = ldlt_inertia(a, zero_tol, k);
    if (in.zero == 0) {
      out.below = in.negative;
      return out;
    }
    // theta sits on (or numerically at) an eigenvalue: step off it
    ++out.perturbations;
    const double step = 1e-10 * std::max(1.0, std::abs(theta)) * static_cast<double>(1 << attempt);
    out.theta_used = theta + step;
  }
  throw ConvergenceError("inertia_below: could not move off a singular shift");
}

}  // namespace simplex_spectra
