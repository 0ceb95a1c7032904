#include "simplex_spectra/theory_bounds.hpp"

#include <cmath>
#include <string>

#include "simplex_spectra/binomial.hpp"
#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

namespace {

void check_nd(std::uint32_t n, std::size_t d) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (n < d + 1) throw DomainError("n must be >= d + 1");
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": value is not finite");
  return v;
}

}  // namespace

void BoundConstants::validate() const {
  if (!(C_d > 0 && c_d > 0 && C_tail > 0 && beta_d > 0)) throw DomainError("bound constants must be > 0");
}

double theta_k(std::uint32_t n, std::size_t d, unsigned k) {
  check_nd(n, d);
  if (k < 1) throw DomainError("k must be >= 1");
  const double nn = n, dd = static_cast<double>(d);
  return std::sqrt((nn - dd) / nn) * std::exp(log_binomial(n, d) / (2.0 * k));
}

double theta_k_star(std::uint32_t n, std::size_t d, unsigned k, const DistributionSpec& spec) {
  check_nd(n, d);
  if (k < 1) throw DomainError("k must be >= 1");
  spec.validate();
  const double nn = n, dd = static_cast<double>(d);
  const double lg = log_binomial(n, d) + std::log(dd * (nn - dd)) - k * std::log(nn * spec.variance());
  return finite_or_throw(spec.sup_centered() * std::exp(lg / (2.0 * k)), "theta_k_star");
}

double phi(double x, double y, unsigned k, std::size_t d, const BoundConstants& c) {
  if (!(x > 0 && y > 0)) throw DomainError("phi: x and y must be > 0");
  if (k < 1 || d < 1) throw DomainError("phi: k and d must be >= 1");
  if (!(c.C_d >= 0 && c.c_d >= 0)) throw DomainError("phi: constants must be >= 0");
  const double kk = k, dd = static_cast<double>(d);
  const double a = x / y + 2.0 * std::sqrt(kk);
  if (!(a > 1.0)) throw DomainError("phi: log argument x/y + 2 sqrt(k) must exceed 1");
  const double pre = std::pow(static_cast<double>(factorial(d)) * dd, 1.0 / (2.0 * kk));
  const double inner = 2.0 * std::sqrt(dd) * a + c.C_d * std::pow(a, 2.0 / 3.0) * std::pow(std::log(a), 2.0 / 3.0) +
                       c.c_d * std::sqrt(kk);
  return finite_or_throw(pre * y * std::pow(a, (dd - 1.0) / kk) * inner, "phi");
}

double schatten_bound(std::uint32_t n, std::size_t d, unsigned k, const DistributionSpec& spec,
                      const BoundConstants& c) {
  if (k < d) throw DomainError("schatten_bound requires k >= d");
  return phi(theta_k(n, d, k), theta_k_star(n, d, k, spec), k, d, c);
}

double tail_xi(std::size_t d, double r, double u, double q0) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (!(u > 0)) throw DomainError("tail_xi: u must be > 0");
  if (!(q0 > 0 && r * q0 >= 2.0)) throw DomainError("tail_xi: needs r q0 >= 2");
  const double dd = static_cast<double>(d);
  const double g = 1.0 + u / (2.0 * std::sqrt(dd));
  const double expo = dd * std::log(r) - std::pow((2.0 / 3.0) * std::log(g), 1.5) * std::pow(r * q0 / dd, 0.25);
  return finite_or_throw(g * g * std::exp(expo), "tail_xi");
}

double tail_probability_bound(std::size_t d, double r, double u, double q0) {
  return 2.0 / static_cast<double>(factorial(d - 1)) * tail_xi(d, r, u, q0);
}

double talagrand_rate(std::size_t d, double q0) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (!(q0 > 0)) throw DomainError("talagrand_rate: q0 must be > 0");
  const double dd = static_cast<double>(d);
  return q0 / (2.0 * dd * (dd + 1.0));
}

std::uint64_t k_zero(std::uint32_t n, const DistributionSpec& spec) {
  if (n < 2) throw DomainError("k_zero: n must be >= 2");
  spec.validate();
  const double v = static_cast<double>(n) * spec.variance() * std::log(static_cast<double>(n));
  if (v <= 1.0) return 1;
  return static_cast<std::uint64_t>(std::ceil(std::sqrt(v)));
}

double gamma_interval(double xi, double xi_prime, std::uint32_t n, std::size_t d, double p) {
  check_nd(n, d);
  if (!(p > 0 && p < 1)) throw DomainError("gamma_interval: p must lie in (0, 1)");
  const double dd = static_cast<double>(d), q = p * (1.0 - p), nq = n * q;
  const double s = 2.0 * std::sqrt(dd) + xi;
  const double denom = std::sqrt(nq) - 4.0 * s;
  if (!(denom > 0))
    throw DomainError("gamma_interval: sqrt(nq) - 4(2 sqrt(d) + xi) = " + std::to_string(denom) + " <= 0");
  const double ln = std::log(static_cast<double>(n));
  return finite_or_throw(p * dd + s * s * std::sqrt(nq) / denom +
                             100.0 * std::pow(dd, 3.5) * std::pow(dd + xi_prime, 3) * std::sqrt(q) * ln * ln * ln,
                         "gamma_interval");
}

double script_E(double xi, std::uint32_t n, std::size_t d) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (n < 2) throw DomainError("script_E: n must be >= 2");
  const double dd = static_cast<double>(d);
  if (!(dd + xi > 0)) throw DomainError("script_E: needs d + xi > 0");
  const double ln = std::log(static_cast<double>(n));
  const double pre = 4.0 * std::exp(3.0) * std::pow(dd, 2.5) / static_cast<double>(factorial(d - 1));
  return finite_or_throw(pre * std::exp(5.0 * std::log(2.0 * dd + 2.0 * xi) + 5.0 * std::log(ln) - xi * ln),
                         "script_E");
}

}  // namespace simplex_spectra
