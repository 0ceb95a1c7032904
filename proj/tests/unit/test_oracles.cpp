#include <doctest.h>

#include <cmath>

#include "simplex_spectra/binomial.hpp"
#include "simplex_spectra/error.hpp"
#include "simplex_spectra/random_models.hpp"
#include "simplex_spectra/spectrum.hpp"
#include "simplex_spectra/trace_oracle.hpp"

using namespace simplex_spectra;

namespace {

double power_sum(const SpectrumReport& r, unsigned k) {
  double s = 0.0;
  for (double v : r.eigenvalues) s += std::pow(v, 2.0 * k);
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("realized walk sum equals the spectral power sum, d = 2, n = 6") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto law = DistributionSpec::uniform(-1.0, 2.0);
    const auto h = build_H(2, 6, law, seed);
    const auto r = full_spectrum(h);
    for (unsigned k = 1; k <= 3; ++k) CHECK(rel(trace_walk_sum(2, 6, law, k, &h), power_sum(r, k)) < 1e-8);
  }
}

TEST_CASE("realized walk sum works for any symmetric matrix of the right size") {
  const auto s = build_expected_A(2, 6, 1.0);  // {-2}^10, {4}^5
  CHECK(trace_walk_sum(2, 6, DistributionSpec::rademacher(), 2, &s) == doctest::Approx(10 * 16.0 + 5 * 256.0));
  const auto wrong = build_expected_A(2, 7, 1.0);
  CHECK_THROWS_AS(trace_walk_sum(2, 6, DistributionSpec::rademacher(), 1, &wrong), DomainError);
}

TEST_CASE("expectation mode, k = 1: C(n,d) d(n-d)/n") {
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::uint32_t n = d + 1; n <= 8; ++n)
      for (const auto& law : {DistributionSpec::bernoulli(0.2), DistributionSpec::uniform(0, 1)})
        CHECK(trace_walk_sum(d, n, law, 1) ==
              doctest::Approx(binomial_real(n, d) * d * (n - d) / double(n)).epsilon(1e-12));
}

TEST_CASE("expectation walk sum equals exhaustive enumeration, d = 2, n = 5, p = 0.3") {
  const auto law = DistributionSpec::bernoulli(0.3);
  for (unsigned k = 1; k <= 3; ++k) {
    const double a = trace_walk_sum(2, 5, law, k), b = trace_exhaustive(2, 5, 0.3, k);
    CHECK(rel(a, b) < 1e-10);
  }
}

TEST_CASE("the two oracles agree for d = 1, n = 4 and with the sign mutation") {
  for (unsigned k = 1; k <= 3; ++k)
    CHECK(rel(trace_walk_sum(1, 4, DistributionSpec::bernoulli(0.5), k), trace_exhaustive(1, 4, 0.5, k)) < 1e-10);
  WalkSumOptions o;
  o.rule = SignRule{true};
  for (unsigned k = 1; k <= 2; ++k)
    CHECK(rel(trace_walk_sum(2, 5, DistributionSpec::bernoulli(0.3), k, nullptr, o),
              trace_exhaustive(2, 5, 0.3, k, o.rule)) < 1e-10);
}

TEST_CASE("oracle Monte Carlo sanity: sample mean of Tr(calA^4) near the exact value") {
  const double exact = trace_exhaustive(2, 5, 0.3, 2);
  double acc = 0.0;
  const int reps = 4000;
  for (int s = 0; s < reps; ++s) acc += power_sum(full_spectrum(build_calA(sample_complex(2, 5, 0.3, s))), 2);
  CHECK(acc / reps == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("walk sums are parallel-invariant") {
  WalkSumOptions one, four;
  four.workers = 4;
  const auto law = DistributionSpec::bernoulli(0.3);
  CHECK(trace_walk_sum(2, 6, law, 3, nullptr, one) == trace_walk_sum(2, 6, law, 3, nullptr, four));
}

TEST_CASE("domain and budget errors") {
  CHECK_THROWS_AS(trace_exhaustive(2, 5, 0.0, 1), DomainError);
  CHECK_THROWS_AS(trace_exhaustive(2, 5, 1.0, 1), DomainError);
  CHECK_THROWS_AS(trace_exhaustive(2, 6, 0.3, 1), CapExceeded);  // C(6,3) = 20 cells
  WalkSumOptions small;
  small.budget = 1000;
  CHECK_THROWS_AS(trace_walk_sum(2, 8, DistributionSpec::rademacher(), 3, nullptr, small), CapExceeded);
  CHECK(closed_walk_count(2, 6, 3) == doctest::Approx(15.0 * std::pow(8.0, 5)));
}

}  // TEST_SUITE
