#pragma once

#include <cstdint>

#include "simplex_spectra/distribution.hpp"

namespace simplex_spectra {

// Unspecified existence constants. The defaults are placeholders, not values
// anyone has proved; every report echoes what was used.
struct BoundConstants {
  double C_d = 10.0;
  double c_d = 10.0;
  double C_tail = 1.0;
  double beta_d = 1.0;

  void validate() const;  // strictly positive
};

// sqrt((n-d)/n) * C(n,d)^(1/2k)
double theta_k(std::uint32_t n, std::size_t d, unsigned k);

// sup|Z-EZ| * (C(n,d) d(n-d) / (n Var Z)^k)^(1/2k)
double theta_k_star(std::uint32_t n, std::size_t d, unsigned k, const DistributionSpec& spec);

// (d! d)^(1/2k) y a^((d-1)/k) (2 sqrt(d) a + C_d a^(2/3) (log a)^(2/3) + c_d sqrt(k)),  a = x/y + 2 sqrt(k)
// C_d, c_d may be zero here (beyond BoundConstants::validate) for sanity checks.
double phi(double x, double y, unsigned k, std::size_t d, const BoundConstants& c);

// phi(theta_k, theta_k_star); needs k >= d
double schatten_bound(std::uint32_t n, std::size_t d, unsigned k, const DistributionSpec& spec,
                      const BoundConstants& c);

// (1 + u/(2 sqrt d))^2 exp(d log r - ((2/3) log(1 + u/(2 sqrt d)))^(3/2) (r q0 / d)^(1/4)),  u > 0, r q0 >= 2
double tail_xi(std::size_t d, double r, double u, double q0);
// 2/(d-1)! * tail_xi
double tail_probability_bound(std::size_t d, double r, double u, double q0);

// q0 / (2 d (d+1))
double talagrand_rate(std::size_t d, double q0);

// ceil(sqrt(n Var Z log n)), at least 1
std::uint64_t k_zero(std::uint32_t n, const DistributionSpec& spec);

// pd + (2 sqrt d + xi)^2 sqrt(nq) / (sqrt(nq) - 4 (2 sqrt d + xi)) + 100 d^(7/2) (d + xi')^3 sqrt(q) log^3 n
double gamma_interval(double xi, double xi_prime, std::uint32_t n, std::size_t d, double p);

// (4 e^3 d^(5/2) / (d-1)!) exp(5 log(2d + 2 xi) + 5 log log n - xi log n)
double script_E(double xi, std::uint32_t n, std::size_t d);

}  // namespace simplex_spectra
