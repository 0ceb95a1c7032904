#include "simplex_spectra/distribution.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw DomainError("bad number in distribution spec: '" + std::string(s) + "'");
  return v;
}

std::vector<double> parse_args(std::string_view s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_number(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

double ipow(double x, unsigned m) {
  double r = 1.0;
  for (unsigned i = 0; i < m; ++i) r *= x;
  return r;
}

}  // namespace

DistributionSpec DistributionSpec::bernoulli(double p) {
  DistributionSpec s{DistKind::Bernoulli, p, 0.0, 0.0};
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::rademacher() { return {DistKind::Rademacher, 0.0, 0.0, 0.0}; }

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  DistributionSpec s{DistKind::Uniform, lo, hi, 0.0};
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::two_point(double x, double y, double pi) {
  DistributionSpec s{DistKind::TwoPoint, x, y, pi};
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string name = lower(text.substr(0, colon));
  const std::vector<double> args =
      colon == std::string_view::npos ? std::vector<double>{} : parse_args(text.substr(colon + 1));
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw DomainError("distribution '" + name + "' expects " + std::to_string(k) + " parameters");
  };
  if (name == "bernoulli") {
    need(1);
    return bernoulli(args[0]);
  }
  if (name == "rademacher") {
    need(0);
    return rademacher();
  }
  if (name == "uniform") {
    need(2);
    return uniform(args[0], args[1]);
  }
  if (name == "twopoint" || name == "two-point" || name == "two_point") {
    need(3);
    return two_point(args[0], args[1], args[2]);
  }
  throw DomainError("unknown distribution '" + std::string(text) + "'");
}

namespace {

// shortest text that parses back to the same double
std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string DistributionSpec::str() const {
  switch (kind) {
    case DistKind::Bernoulli: return "bernoulli:" + shortest(a);
    case DistKind::Rademacher: return "rademacher";
    case DistKind::Uniform: return "uniform:" + shortest(a) + "," + shortest(b);
    case DistKind::TwoPoint: return "twopoint:" + shortest(a) + "," + shortest(b) + "," + shortest(c);
  }
  return {};
}

void DistributionSpec::validate() const {
  switch (kind) {
    case DistKind::Bernoulli:
      if (!(a > 0.0 && a < 1.0)) throw DomainError("Bernoulli p must lie in (0, 1)");
      break;
    case DistKind::Rademacher: break;
    case DistKind::Uniform:
      if (!(std::isfinite(a) && std::isfinite(b) && a < b)) throw DomainError("Uniform needs a < b");
      break;
    case DistKind::TwoPoint:
      if (!(std::isfinite(a) && std::isfinite(b) && a != b)) throw DomainError("TwoPoint needs x != y");
      if (!(c > 0.0 && c < 1.0)) throw DomainError("TwoPoint probability must lie in (0, 1)");
      break;
  }
}

double DistributionSpec::draw(double u) const {
  switch (kind) {
    case DistKind::Bernoulli: return u < a ? 1.0 : 0.0;
    case DistKind::Rademacher: return u < 0.5 ? -1.0 : 1.0;
    case DistKind::Uniform: return a + (b - a) * u;
    case DistKind::TwoPoint: return u < c ? a : b;
  }
  return 0.0;
}

double DistributionSpec::mean() const {
  switch (kind) {
    case DistKind::Bernoulli: return a;
    case DistKind::Rademacher: return 0.0;
    case DistKind::Uniform: return 0.5 * (a + b);
    case DistKind::TwoPoint: return c * a + (1.0 - c) * b;
  }
  return 0.0;
}

double DistributionSpec::variance() const {
  switch (kind) {
    // keep this expression identical to the one used for calA so that
    // H(Bernoulli(p)) and calA agree bit for bit
    case DistKind::Bernoulli: return a * (1.0 - a);
    case DistKind::Rademacher: return 1.0;
    case DistKind::Uniform: return (b - a) * (b - a) / 12.0;
    case DistKind::TwoPoint: return c * (1.0 - c) * (a - b) * (a - b);
  }
  return 0.0;
}

double DistributionSpec::sup_centered() const {
  switch (kind) {
    case DistKind::Bernoulli: return std::max(a, 1.0 - a);
    case DistKind::Rademacher: return 1.0;
    case DistKind::Uniform: return 0.5 * (b - a);
    case DistKind::TwoPoint: {
      const double mu = mean();
      return std::max(std::abs(a - mu), std::abs(b - mu));
    }
  }
  return 0.0;
}

double DistributionSpec::central_moment(unsigned m) const {
  switch (kind) {
    case DistKind::Bernoulli: return a * ipow(1.0 - a, m) + (1.0 - a) * ipow(-a, m);
    case DistKind::Rademacher: return m % 2 == 0 ? 1.0 : 0.0;
    case DistKind::Uniform: {
      if (m % 2 == 1) return 0.0;
      const double h = 0.5 * (b - a);
      return ipow(h, m) / (m + 1.0);
    }
    case DistKind::TwoPoint: {
      const double mu = mean();
      return c * ipow(a - mu, m) + (1.0 - c) * ipow(b - mu, m);
    }
  }
  return 0.0;
}

double DistributionSpec::abs_central_moment(unsigned m) const {
  switch (kind) {
    case DistKind::Bernoulli: return a * ipow(1.0 - a, m) + (1.0 - a) * ipow(a, m);
    case DistKind::Rademacher: return 1.0;
    case DistKind::Uniform: return ipow(0.5 * (b - a), m) / (m + 1.0);
    case DistKind::TwoPoint: {
      const double mu = mean();
      return c * ipow(std::abs(a - mu), m) + (1.0 - c) * ipow(std::abs(b - mu), m);
    }
  }
  return 0.0;
}

DistStats dist_stats(const DistributionSpec& spec, unsigned m) {
  spec.validate();
  return {spec.mean(), spec.variance(), spec.sup_centered(), spec.central_moment(m), spec.abs_central_moment(m)};
}

}  // namespace simplex_spectra
