#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "simplex_spectra/dense_eigen.hpp"
#include "simplex_spectra/inertia.hpp"
#include "simplex_spectra/lanczos.hpp"
#include "simplex_spectra/random_models.hpp"
#include "simplex_spectra/rng.hpp"
#include "simplex_spectra/simd.hpp"

using namespace simplex_spectra;

namespace {

std::vector<double> rand_vec(std::size_t n, std::uint64_t seed) {
  const CounterRng r(seed);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 2.0 * r.uniform(i) - 1.0;
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

double vdiff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("dispatch reports a usable ISA") {
  const auto isas = simd::available_isas();
  REQUIRE(!isas.empty());
  CHECK(isas.front() == simd::Isa::Scalar);
  CHECK(simd::isa_available(simd::Isa::Scalar));
  CHECK(simd::kernels_for(simd::Isa::Scalar).isa == simd::Isa::Scalar);
  MESSAGE("active kernels: " << simd::kernels().name);
}

TEST_CASE("every kernel variant matches the scalar reference") {
  const simd::Kernels& ref = simd::scalar_kernels();
  for (simd::Isa isa : simd::available_isas()) {
    const simd::Kernels& k = simd::kernels_for(isa);
    CAPTURE(simd::isa_name(isa));
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 33u, 100u, 1001u}) {
      CAPTURE(n);
      const auto x = rand_vec(n, 1 + n), y = rand_vec(n, 2 + n), z0 = rand_vec(n, 3 + n);
      CHECK(rel(k.dot(x.data(), y.data(), n), ref.dot(x.data(), y.data(), n)) < 1e-13);

      auto y1 = y, y2 = y;
      k.axpy(0.37, x.data(), y1.data(), n);
      ref.axpy(0.37, x.data(), y2.data(), n);
      CHECK(vdiff(y1, y2) < 1e-15);

      auto z1 = z0, z2 = z0;
      k.axpy2(0.5, x.data(), -1.25, y.data(), z1.data(), n);
      ref.axpy2(0.5, x.data(), -1.25, y.data(), z2.data(), n);
      CHECK(vdiff(z1, z2) < 1e-15);

      auto w1 = z0, w2 = z0;
      const double d1 = k.dot_axpy(x.data(), y.data(), 0.75, w1.data(), n);
      const double d2 = ref.dot_axpy(x.data(), y.data(), 0.75, w2.data(), n);
      CHECK(rel(d1, d2) < 1e-13);
      CHECK(vdiff(w1, w2) < 1e-15);

      auto s1 = x, s2 = x;
      k.scal(-2.5, s1.data(), n);
      ref.scal(-2.5, s2.data(), n);
      CHECK(vdiff(s1, s2) == 0.0);

      for (std::size_t m : {1u, 2u, 3u, 4u, 5u, 9u}) {
        const std::size_t ld = n + 3;
        const auto q = rand_vec(ld * m, 40 + m);
        std::vector<double> c1(m), c2(m);
        k.multi_dot(q.data(), ld, m, x.data(), c1.data(), n);
        ref.multi_dot(q.data(), ld, m, x.data(), c2.data(), n);
        for (std::size_t r = 0; r < m; ++r) CHECK(rel(c1[r], c2[r]) < 1e-13);
        auto v1 = y, v2 = y;
        k.multi_axpy(q.data(), ld, m, c2.data(), v1.data(), n);
        ref.multi_axpy(q.data(), ld, m, c2.data(), v2.data(), n);
        CHECK(vdiff(v1, v2) < 1e-13);
      }
    }
  }
}

TEST_CASE("sparse matvec variants agree") {
  const auto h = build_H(2, 25, DistributionSpec::uniform(-1, 1), 3);
  const auto x = rand_vec(h.dim(), 8);
  std::vector<double> y0(h.dim()), y1(h.dim());
  h.multiply(x.data(), y0.data(), simd::scalar_kernels());
  for (simd::Isa isa : simd::available_isas()) {
    h.multiply(x.data(), y1.data(), simd::kernels_for(isa));
    CHECK(vdiff(y0, y1) < 1e-13);
  }
  // reference: dense product
  const DenseMatrix d = h.to_dense();
  for (std::size_t i = 0; i < h.dim(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < h.dim(); ++j) s += d(i, j) * x[j];
    CHECK(std::abs(s - y0[i]) < 1e-13);
  }
}

TEST_CASE("solvers agree across kernel variants") {
  const auto h = build_H(2, 20, DistributionSpec::bernoulli(0.3), 12);
  const auto ref_ev = dense_eigenvalues(h.to_dense(), simd::scalar_kernels());
  const auto ref_ps = lanczos(h, 3, 3, {}, simd::scalar_kernels());
  DenseMatrix b0 = h.to_dense();
  for (std::size_t i = 0; i < h.dim(); ++i) b0(i, i) -= 0.1;
  DenseMatrix bs = b0;
  const Inertia ref_in = ldlt_inertia(bs, 1e-12, simd::scalar_kernels());
  for (simd::Isa isa : simd::available_isas()) {
    const auto& k = simd::kernels_for(isa);
    CHECK(test_helpers::max_abs_diff(dense_eigenvalues(h.to_dense(), k), ref_ev) < 1e-11);
    const auto ps = lanczos(h, 3, 3, {}, k);
    CHECK(test_helpers::max_abs_diff(ps.bottom, ref_ps.bottom) < 1e-8);
    CHECK(test_helpers::max_abs_diff(ps.top, ref_ps.top) < 1e-8);
    DenseMatrix b = b0;
    const Inertia in = ldlt_inertia(b, 1e-12, k);
    CHECK(in.negative == ref_in.negative);
    CHECK(in.positive == ref_in.positive);
  }
}

}  // TEST_SUITE
