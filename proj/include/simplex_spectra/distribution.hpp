#pragma once

#include <string>
#include <string_view>

namespace simplex_spectra {

enum class DistKind { Bernoulli, Rademacher, Uniform, TwoPoint };

// Law of the entry variable Z. Parameters by kind:
//   Bernoulli  a = p
//   Uniform    [a, b]
//   TwoPoint   x = a with probability c, y = b otherwise
struct DistributionSpec {
  DistKind kind = DistKind::Bernoulli;
  double a = 0.5;
  double b = 0.0;
  double c = 0.0;

  static DistributionSpec bernoulli(double p);
  static DistributionSpec rademacher();
  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec two_point(double x, double y, double pi);

  // "bernoulli:0.3", "rademacher", "uniform:0,1", "twopoint:x,y,pi"
  static DistributionSpec parse(std::string_view text);
  std::string str() const;

  void validate() const;

  // inverse-CDF draw from a uniform u in [0, 1)
  double draw(double u) const;

  double mean() const;
  double variance() const;
  // sup |Z - EZ| over the support
  double sup_centered() const;
  // E (Z - EZ)^m
  double central_moment(unsigned m) const;
  // E |Z - EZ|^m
  double abs_central_moment(unsigned m) const;
};

struct DistStats {
  double mean;
  double variance;
  double sup_centered;
  double central_moment;
  double abs_central_moment;
};

DistStats dist_stats(const DistributionSpec& spec, unsigned m);

}  // namespace simplex_spectra
