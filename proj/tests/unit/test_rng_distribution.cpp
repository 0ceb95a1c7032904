#include <doctest.h>

#include <cmath>
#include <vector>
#include <set>

#include "simplex_spectra/distribution.hpp"
#include "simplex_spectra/error.hpp"
#include "simplex_spectra/rng.hpp"

using namespace simplex_spectra;

TEST_SUITE("rng") {

TEST_CASE("counter rng is a pure function of (seed, counter)") {
  const CounterRng a(42), b(42), c(43);
  for (std::uint64_t t = 0; t < 1000; ++t) {
    CHECK(a.bits(t) == b.bits(t));
    CHECK(a.uniform(t) >= 0.0);
    CHECK(a.uniform(t) < 1.0);
  }
  int same = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) same += a.bits(t) == c.bits(t);
  CHECK(same == 0);
  // order of evaluation is irrelevant
  CHECK(a.bits(999) == CounterRng(42).bits(999));
}

TEST_CASE("uniforms look uniform") {
  const CounterRng r(7);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  int below = 0;
  for (int t = 0; t < n; ++t) {
    const double u = r.uniform(t);
    sum += u;
    sq += u * u;
    below += u < 0.3;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sq / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
  CHECK(below / double(n) == doctest::Approx(0.3).epsilon(0.02));
}

TEST_CASE("derived seeds are distinct and reproducible") {
  std::set<std::uint64_t> s;
  for (std::uint64_t i = 0; i < 10000; ++i) s.insert(derive_seed(1, i));
  CHECK(s.size() == 10000);
  CHECK(derive_seed(5, 17) == derive_seed(5, 17));
  CHECK(derive_seed(5, 17) != derive_seed(6, 17));
}

}  // TEST_SUITE

TEST_SUITE("distribution") {

TEST_CASE("parse and print round trip") {
  for (const char* s : {"bernoulli:0.3", "rademacher", "uniform:0,1", "twopoint:-1,2,0.25"}) {
    const auto d = DistributionSpec::parse(s);
    CHECK(d.str() == s);
    CHECK(DistributionSpec::parse(d.str()).str() == d.str());
  }
  CHECK_THROWS_AS(DistributionSpec::parse("poisson:3"), DomainError);
  CHECK_THROWS_AS(DistributionSpec::parse("bernoulli:0.3,2"), DomainError);
  CHECK_THROWS_AS(DistributionSpec::parse("bernoulli:x"), DomainError);
}

TEST_CASE("degenerate laws are rejected") {
  CHECK_THROWS_AS(DistributionSpec::bernoulli(0.0), DomainError);
  CHECK_THROWS_AS(DistributionSpec::bernoulli(1.0), DomainError);
  CHECK_THROWS_AS(DistributionSpec::uniform(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(DistributionSpec::two_point(2.0, 2.0, 0.5), DomainError);
}

TEST_CASE("closed-form moments agree with numeric integration") {
  const DistributionSpec laws[] = {DistributionSpec::bernoulli(0.3), DistributionSpec::rademacher(),
                                   DistributionSpec::uniform(-1.0, 3.0), DistributionSpec::two_point(-1.0, 2.0, 0.25)};
  for (const auto& law : laws) {
    // midpoint rule over the inverse CDF
    const int n = 400000;
    std::vector<double> raw(9, 0.0), absm(9, 0.0);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += law.draw((i + 0.5) / n);
    mean /= n;
    for (int i = 0; i < n; ++i) {
      const double z = law.draw((i + 0.5) / n) - mean;
      double p = 1.0;
      for (int m = 1; m <= 8; ++m) {
        p *= z;
        raw[m] += p / n;
        absm[m] += std::abs(p) / n;
      }
    }
    CAPTURE(law.str());
    CHECK(law.mean() == doctest::Approx(mean).epsilon(1e-6));
    CHECK(law.variance() == doctest::Approx(raw[2]).epsilon(1e-5));
    for (unsigned m = 1; m <= 8; ++m) {
      CHECK(law.central_moment(m) == doctest::Approx(raw[m]).epsilon(1e-4).scale(1.0));
      CHECK(law.abs_central_moment(m) == doctest::Approx(absm[m]).epsilon(1e-4).scale(1.0));
    }
    const DistStats st = dist_stats(law, 4);
    CHECK(st.central_moment == law.central_moment(4));
    CHECK(st.sup_centered == law.sup_centered());
  }
}

TEST_CASE("Bernoulli specifics") {
  const auto b = DistributionSpec::bernoulli(0.25);
  CHECK(b.variance() == doctest::Approx(3.0 / 16.0));
  CHECK(b.sup_centered() == doctest::Approx(0.75));
  // E (chi - p)^4 = p(1-p)^4 + (1-p)p^4 = 84/1024 at p = 1/4
  CHECK(b.central_moment(4) == doctest::Approx(84.0 / 1024.0));
  CHECK(b.central_moment(1) == doctest::Approx(0.0));
  CHECK(b.abs_central_moment(2) == doctest::Approx(b.variance()));
  CHECK(b.draw(0.1) == 1.0);
  CHECK(b.draw(0.3) == 0.0);
}

}  // TEST_SUITE
