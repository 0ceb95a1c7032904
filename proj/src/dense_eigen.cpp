#include "simplex_spectra/dense_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

Tridiagonalization tridiagonalize(DenseMatrix a, const simd::Kernels& k) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DomainError("tridiagonalize: matrix not square");
  Tridiagonalization out;
  out.diag.assign(n, 0.0);
  out.off.assign(n > 0 ? n - 1 : 0, 0.0);
  out.tau.assign(n > 1 ? n - 1 : 0, 0.0);
  std::vector<double> p(n), w(n);

  for (std::size_t j = 0; j + 2 < n; ++j) {
    double* x = a.col(j) + j + 1;  // length m
    const std::size_t m = n - j - 1;
    const double alpha = x[0];
    const double sigma = k.dot(x + 1, x + 1, m - 1);
    out.diag[j] = a(j, j);
    if (sigma == 0.0) {
      out.off[j] = alpha;
      out.tau[j] = 0.0;
      x[0] = 1.0;
      continue;
    }
    const double beta = -std::copysign(std::sqrt(alpha * alpha + sigma), alpha);
    const double tau = (beta - alpha) / beta;
    k.scal(1.0 / (alpha - beta), x + 1, m - 1);
    x[0] = 1.0;
    out.off[j] = beta;
    out.tau[j] = tau;

    // p = tau * A22 v   (lower triangle, column sweep)
    std::fill(p.begin(), p.begin() + m, 0.0);
    for (std::size_t c = 0; c < m; ++c) {
      const double* col = a.col(j + 1 + c) + j + 1 + c;  // A22(c.., c)
      p[c] += col[0] * x[c];
      p[c] += k.dot_axpy(col + 1, x + c + 1, x[c], p.data() + c + 1, m - c - 1);
    }
    k.scal(tau, p.data(), m);
    const double kk = 0.5 * tau * k.dot(p.data(), x, m);
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kk * x[i];
    // A22 -= v w^T + w v^T
    for (std::size_t c = 0; c < m; ++c) {
      double* col = a.col(j + 1 + c) + j + 1 + c;
      k.axpy2(-x[c], w.data() + c, -w[c], x + c, col, m - c);
    }
  }
  if (n >= 2) {
    out.diag[n - 2] = a(n - 2, n - 2);
    out.off[n - 2] = a(n - 1, n - 2);
    out.tau[n - 2] = 0.0;
  }
  if (n >= 1) out.diag[n - 1] = a(n - 1, n - 1);
  out.reflectors = std::move(a);
  return out;
}

namespace {

// QL sweeps; if z is non-null it carries one row of the eigenvector matrix.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, double* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw ConvergenceError("tridiagonal QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool deflated = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            f = z[i + 1];
            z[i + 1] = s * z[i] + c * f;
            z[i] = c * z[i] - s * f;
          }
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off) {
  ql_implicit(diag, off, nullptr);
  std::sort(diag.begin(), diag.end());
  return diag;
}

TridiagonalEigen tridiagonal_eigen_last(std::vector<double> diag, std::vector<double> off) {
  const std::size_t n = diag.size();
  std::vector<double> z(n, 0.0);
  if (n) z[n - 1] = 1.0;
  ql_implicit(diag, off, z.data());
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
  TridiagonalEigen out;
  out.values.reserve(n);
  out.last.reserve(n);
  for (auto i : idx) {
    out.values.push_back(diag[i]);
    out.last.push_back(z[i]);
  }
  return out;
}

std::vector<double> dense_eigenvalues(const DenseMatrix& a, const simd::Kernels& k) {
  Tridiagonalization t = tridiagonalize(a, k);
  return tridiagonal_eigenvalues(std::move(t.diag), std::move(t.off));
}

std::vector<double> eigenvector_for(const Tridiagonalization& t, double lambda) {
  const std::size_t n = t.diag.size();
  if (n == 0) return {};
  double tnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::abs(t.diag[i]);
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    tnorm = std::max(tnorm, r);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double tiny = std::max(tnorm, 1.0) * eps;
  const double shift = lambda + tiny;

  // LU of T - shift I with partial pivoting: U has two superdiagonals
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), mult(n, 0.0);
  std::vector<char> swapped(n, 0);
  {
    double dcur = t.diag[0] - shift;
    double ecur = n > 1 ? t.off[0] : 0.0;
    double fcur = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double below = t.off[i];
      const double dnext = t.diag[i + 1] - shift;
      const double enext = i + 2 < n ? t.off[i + 1] : 0.0;
      if (std::abs(dcur) >= std::abs(below)) {
        const double l = dcur == 0.0 ? 0.0 : below / dcur;
        u0[i] = dcur;
        u1[i] = ecur;
        u2[i] = fcur;
        mult[i] = l;
        dcur = dnext - l * ecur;
        ecur = enext - l * fcur;
        fcur = 0.0;
      } else {
        // swap rows i and i+1
        const double l = dcur / below;
        u0[i] = below;
        u1[i] = dnext;
        u2[i] = enext;
        mult[i] = l;
        swapped[i] = 1;
        const double nd = ecur - l * dnext;
        const double ne = fcur - l * enext;
        dcur = nd;
        ecur = ne;
        fcur = 0.0;
      }
    }
    u0[n - 1] = dcur;
  }
  for (auto& v : u0)
    if (std::abs(v) < tiny) v = v < 0 ? -tiny : tiny;

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int it = 0; it < 4; ++it) {
    // forward: apply L^{-1}
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= mult[i] * x[i];
    }
    // back substitution with U
    for (std::size_t i = n; i-- > 0;) {
      double s = x[i];
      if (i + 1 < n) s -= u1[i] * x[i + 1];
      if (i + 2 < n) s -= u2[i] * x[i + 2];
      x[i] = s / u0[i];
    }
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : x) v /= nrm;
  }

  // x <- H_0 H_1 ... H_{n-3} x
  const DenseMatrix& r = t.reflectors;
  for (std::size_t j = n >= 2 ? n - 2 : 0; j-- > 0;) {
    if (t.tau[j] == 0.0) continue;
    const std::size_t m = n - j - 1;
    const double* v = r.col(j) + j + 1;
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += v[i] * x[j + 1 + i];
    s *= t.tau[j];
    for (std::size_t i = 0; i < m; ++i) x[j + 1 + i] -= s * v[i];
  }
  return x;
}

}  // namespace simplex_spectra
