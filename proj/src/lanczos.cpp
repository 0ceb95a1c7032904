#include "simplex_spectra/lanczos.hpp"

#include <algorithm>
#include <cmath>

#include "simplex_spectra/dense_eigen.hpp"
#include "simplex_spectra/error.hpp"
#include "simplex_spectra/rng.hpp"

namespace simplex_spectra {

namespace {

// random unit vector orthogonal to the first `rows` basis vectors; false if none left
bool fresh_direction(std::vector<double>& basis, std::size_t n, std::size_t rows, const CounterRng& rng,
                     std::uint64_t& counter, double* out, const simd::Kernels& k) {
  std::vector<double> c(rows);
  for (int attempt = 0; attempt < 4; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * rng.uniform(counter++) - 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      k.multi_dot(basis.data(), n, rows, out, c.data(), n);
      k.multi_axpy(basis.data(), n, rows, c.data(), out, n);
    }
    const double nrm = std::sqrt(k.dot(out, out, n));
    if (nrm > 1e-8 * std::sqrt(static_cast<double>(n))) {
      k.scal(1.0 / nrm, out, n);
      return true;
    }
  }
  return false;
}

}  // namespace

PartialSpectrum lanczos(const SparseSymmetricMatrix& m, std::size_t k_bottom, std::size_t k_top,
                        const LanczosOptions& opt, const simd::Kernels& k) {
  const std::size_t n = m.dim();
  if (n == 0) throw DomainError("lanczos: empty matrix");
  if (k_bottom + k_top == 0) throw DomainError("lanczos: nothing requested");
  if (k_bottom > n || k_top > n) throw DomainError("lanczos: more eigenvalues requested than N");
  std::size_t max_iter = opt.max_iter ? opt.max_iter : 4 * (k_bottom + k_top) + 300;
  max_iter = std::min(max_iter, n);

  PartialSpectrum out;
  std::vector<double> basis((max_iter + 1) * n);
  std::vector<double> alpha, beta;  // beta[j] couples j and j+1
  std::vector<double> w(n), coef(max_iter + 1);
  const CounterRng rng(opt.seed);
  std::uint64_t counter = 0;

  if (!fresh_direction(basis, n, 0, rng, counter, basis.data(), k)) throw std::logic_error("lanczos: zero start");

  std::size_t j = 0;
  bool exhausted = false;
  while (true) {
    const double* q = basis.data() + j * n;
    m.multiply(q, w.data(), k);
    const double a = k.dot(q, w.data(), n);
    alpha.push_back(a);
    // full reorthogonalisation against q_0..q_j (covers the three-term recurrence too)
    for (int pass = 0; pass < 2; ++pass) {
      k.multi_dot(basis.data(), n, j + 1, w.data(), coef.data(), n);
      k.multi_axpy(basis.data(), n, j + 1, coef.data(), w.data(), n);
    }
    double b = std::sqrt(k.dot(w.data(), w.data(), n));
    const std::size_t steps = j + 1;

    double anorm = 0.0;
    for (std::size_t i = 0; i < steps; ++i)
      anorm = std::max(anorm, std::abs(alpha[i]) + (i ? beta[i - 1] : 0.0) + (i < beta.size() ? beta[i] : 0.0));
    const bool breakdown = b <= 1e-12 * std::max(anorm, 1e-300) || b == 0.0;
    if (steps == n) exhausted = true;

    const bool check = exhausted || steps == max_iter || breakdown || steps % opt.check_every == 0;
    if (check && steps >= std::min(n, k_bottom + k_top)) {
      std::vector<double> off(beta);
      const TridiagonalEigen te = tridiagonal_eigen_last(alpha, off);
      const double bnext = breakdown || exhausted ? 0.0 : b;
      double scale = 0.0;
      for (double v : te.values) scale = std::max(scale, std::abs(v));
      const std::size_t kb = std::min(k_bottom, steps), kt = std::min(k_top, steps);
      out.bottom.assign(te.values.begin(), te.values.begin() + static_cast<std::ptrdiff_t>(kb));
      out.top.assign(te.values.end() - static_cast<std::ptrdiff_t>(kt), te.values.end());
      out.bottom_residual.clear();
      out.top_residual.clear();
      double worst = 0.0;
      for (std::size_t i = 0; i < kb; ++i) {
        out.bottom_residual.push_back(std::abs(bnext * te.last[i]));
        worst = std::max(worst, out.bottom_residual.back());
      }
      for (std::size_t i = steps - kt; i < steps; ++i) {
        out.top_residual.push_back(std::abs(bnext * te.last[i]));
        worst = std::max(worst, out.top_residual.back());
      }
      out.iterations = steps;
      out.scale = scale;
      out.max_residual = worst;
      const bool enough = kb == k_bottom && kt == k_top;
      // a zero matrix has scale 0; treat absolute residual 0 as converged
      out.converged = enough && (worst <= opt.tol * scale || worst == 0.0);
      if (exhausted) {
        out.converged = enough;
        out.exhausted = true;
      }
      if (out.converged && !breakdown) break;
      if (out.converged && breakdown) {
        // an invariant subspace can hide eigenvalues further out; only stop
        // when the restart direction is exhausted (checked below)
      }
    }
    if (exhausted || steps == max_iter) break;

    double* next = basis.data() + (j + 1) * n;
    if (breakdown) {
      if (!fresh_direction(basis, n, j + 1, rng, counter, next, k)) {
        out.exhausted = true;
        out.converged = out.bottom.size() == std::min(k_bottom, steps) && out.top.size() == std::min(k_top, steps);
        break;
      }
      beta.push_back(0.0);
    } else {
      for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / b;
      beta.push_back(b);
    }
    ++j;
  }
  return out;
}

}  // namespace simplex_spectra
