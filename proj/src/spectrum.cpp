#include "simplex_spectra/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "simplex_spectra/binomial.hpp"
#include "simplex_spectra/dense_eigen.hpp"
#include "simplex_spectra/error.hpp"
#include "simplex_spectra/inertia.hpp"

namespace simplex_spectra {

namespace {

constexpr std::size_t kMaxListedViolations = 32;

struct Split {
  std::size_t bulk;     // C(n-1, d)
  std::size_t cluster;  // C(n-1, d-1)
};

Split split_sizes(std::size_t dim, std::uint32_t n, std::size_t d) {
  if (d < 1 || n < d + 1) throw DomainError("need n >= d + 1");
  const Split s{static_cast<std::size_t>(binomial(n - 1, d)), static_cast<std::size_t>(binomial(n - 1, d - 1))};
  if (s.bulk + s.cluster != dim) throw DomainError("matrix dimension is not C(n, d)");
  if (s.bulk == 0 || s.bulk >= dim) throw DomainError("split index out of range (n too small)");
  return s;
}

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct Intervals {
  double blo, bhi, clo, chi;
};

Intervals intervals(std::uint32_t n, std::size_t d, double p, double xi) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("confinement needs p in (0, 1)");
  if (!(xi >= 0.0)) throw DomainError("xi must be >= 0");
  const double nq = static_cast<double>(n) * p * (1.0 - p);
  const double r = std::sqrt(static_cast<double>(d) * nq);
  const double dd = static_cast<double>(d);
  return {r * (-2.0 - xi), r * (2.0 + xi), nq - 7.0 * dd, nq + 7.0 * dd};
}

void note_violation(ConfinementReport& rep, std::size_t index, double v, bool bulk) {
  ++rep.violation_count;
  if (rep.violations.size() < kMaxListedViolations) rep.violations.push_back({index, v, bulk});
}

}  // namespace

SpectrumReport full_spectrum(const SparseSymmetricMatrix& m, const SpectrumOptions& opt) {
  const std::size_t n = m.dim();
  if (n == 0) throw DomainError("full_spectrum: empty matrix");
  if (n > opt.dense_cap) throw CapExceeded("full_spectrum: N = " + std::to_string(n) + " exceeds dense cap " +
                                           std::to_string(opt.dense_cap));
  const Tridiagonalization t = tridiagonalize(m.to_dense());
  SpectrumReport r;
  r.method = "dense-householder-ql";
  r.dim = n;
  r.eigenvalues = tridiagonal_eigenvalues(t.diag, t.off);
  r.lambda_min = r.eigenvalues.front();
  r.lambda_max = r.eigenvalues.back();
  const double norm = std::max(std::abs(r.lambda_min), std::abs(r.lambda_max));

  // spot residuals at evenly spaced positions, always including both ends
  const std::size_t checks = std::min(opt.spot_checks, n);
  std::vector<double> mx(n);
  double worst = 0.0;
  for (std::size_t c = 0; c < checks; ++c) {
    const std::size_t idx = checks == 1 ? n - 1 : c * (n - 1) / (checks - 1);
    const double lam = r.eigenvalues[idx];
    const std::vector<double> x = eigenvector_for(t, lam);
    m.multiply(x.data(), mx.data());
    for (std::size_t i = 0; i < n; ++i) mx[i] -= lam * x[i];
    const double res = vec_norm(mx);
    worst = std::max(worst, norm > 0 ? res / norm : res);
  }
  r.tolerance = worst;
  return r;
}

SpectrumReport extreme_eigs(const SparseSymmetricMatrix& m, Which, double tol, std::size_t max_iter) {
  if (m.dim() < 1) throw DomainError("extreme_eigs: empty matrix");
  LanczosOptions lo;
  lo.tol = tol;
  lo.max_iter = max_iter ? max_iter : std::min<std::size_t>(m.dim(), 1000);
  const PartialSpectrum ps = lanczos(m, 1, 1, lo);
  if (!ps.converged)
    throw ConvergenceError("Lanczos did not converge in " + std::to_string(ps.iterations) +
                           " iterations (residual " + std::to_string(ps.max_residual) + ")");
  SpectrumReport r;
  r.method = "lanczos";
  r.dim = m.dim();
  r.lambda_min = ps.bottom.front();
  r.lambda_max = ps.top.back();
  r.tolerance = ps.scale > 0 ? ps.max_residual / ps.scale : ps.max_residual;
  r.iterations = ps.iterations;
  return r;
}

double operator_norm(const SpectrumReport& r) { return std::max(std::abs(r.lambda_min), std::abs(r.lambda_max)); }

double operator_norm(const SparseSymmetricMatrix& m, double tol) { return operator_norm(extreme_eigs(m, Which::Both, tol)); }

double schatten(const SpectrumReport& r, unsigned p) {
  if (!r.full()) throw DomainError("schatten norm needs the full spectrum");
  if (p == 0 || p % 2 != 0) throw DomainError("schatten: p must be a positive even integer");
  const double big = operator_norm(r);
  if (big == 0.0) return 0.0;
  double s = 0.0;
  for (double l : r.eigenvalues) s += std::pow(l / big, static_cast<double>(p));
  return big * std::pow(s, 1.0 / p);
}

double schatten(const SparseSymmetricMatrix& m, unsigned p, const SpectrumOptions& opt) {
  return schatten(full_spectrum(m, opt), p);
}

GapResult spectral_gap(const SpectrumReport& full, std::uint32_t n, std::size_t d) {
  if (!full.full()) throw DomainError("spectral_gap: full spectrum required");
  const Split s = split_sizes(full.dim, n, d);
  GapResult g;
  g.lower = full.eigenvalues[s.bulk - 1];
  g.upper = full.eigenvalues[s.bulk];
  g.gap = g.upper - g.lower;
  g.method = full.method;
  return g;
}

GapResult spectral_gap(const SparseSymmetricMatrix& m, std::uint32_t n, std::size_t d, const SpectrumOptions& opt) {
  const Split s = split_sizes(m.dim(), n, d);
  if (m.dim() <= opt.dense_auto_max) return spectral_gap(full_spectrum(m, opt), n, d);
  // come in from whichever end is closer to the split
  const bool from_top = s.cluster <= s.bulk;
  const std::size_t want = (from_top ? s.cluster : s.bulk) + 1;
  if (want > 1500) throw CapExceeded("spectral_gap: split is too deep inside the spectrum for Lanczos");
  const PartialSpectrum ps = from_top ? lanczos(m, 0, want, opt.lanczos) : lanczos(m, want, 0, opt.lanczos);
  if (!ps.converged) throw ConvergenceError("spectral_gap: Lanczos did not converge");
  GapResult g;
  if (from_top) {
    g.lower = ps.top[0];
    g.upper = ps.top[1];
  } else {
    g.lower = ps.bottom[want - 2];
    g.upper = ps.bottom[want - 1];
  }
  g.gap = g.upper - g.lower;
  g.method = "lanczos";
  return g;
}

ConfinementReport confinement_report(const SpectrumReport& full, std::uint32_t n, std::size_t d, double p,
                                     double xi) {
  if (!full.full()) throw DomainError("confinement_report: full spectrum required");
  const Split s = split_sizes(full.dim, n, d);
  const Intervals iv = intervals(n, d, p, xi);
  ConfinementReport rep;
  rep.dim = full.dim;
  rep.expected_bulk = s.bulk;
  rep.expected_cluster = s.cluster;
  rep.bulk_lo = iv.blo;
  rep.bulk_hi = iv.bhi;
  rep.cluster_lo = iv.clo;
  rep.cluster_hi = iv.chi;
  rep.method = full.method;
  const auto& ev = full.eigenvalues;
  const double mid = 0.5 * (iv.bhi + iv.clo);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i] < mid) ++rep.below_midpoint;
    if (i < s.bulk) {
      if (ev[i] >= iv.blo && ev[i] <= iv.bhi) ++rep.bulk_count;
      else note_violation(rep, i + 1, ev[i], true);
    } else {
      if (ev[i] >= iv.clo && ev[i] <= iv.chi) ++rep.cluster_count;
      else note_violation(rep, i + 1, ev[i], false);
    }
  }
  rep.lambda_min = ev.front();
  rep.lambda_bulk_max = ev[s.bulk - 1];
  rep.lambda_cluster_min = ev[s.bulk];
  rep.lambda_max = ev.back();
  return rep;
}

ConfinementReport confinement_report(const SparseSymmetricMatrix& m, std::uint32_t n, std::size_t d, double p,
                                     double xi, const SpectrumOptions& opt) {
  const Split s = split_sizes(m.dim(), n, d);
  if (m.dim() <= opt.dense_auto_max) return confinement_report(full_spectrum(m, opt), n, d, p, xi);
  if (s.cluster + 1 > 1500) throw CapExceeded("confinement_report: cluster too large for Lanczos");
  const Intervals iv = intervals(n, d, p, xi);
  const PartialSpectrum ps = lanczos(m, 1, s.cluster + 1, opt.lanczos);
  if (!ps.converged) throw ConvergenceError("confinement_report: Lanczos did not converge");

  ConfinementReport rep;
  rep.dim = m.dim();
  rep.expected_bulk = s.bulk;
  rep.expected_cluster = s.cluster;
  rep.bulk_lo = iv.blo;
  rep.bulk_hi = iv.bhi;
  rep.cluster_lo = iv.clo;
  rep.cluster_hi = iv.chi;
  rep.method = "lanczos";
  rep.lambda_min = ps.bottom.front();
  rep.lambda_bulk_max = ps.top.front();
  rep.lambda_cluster_min = ps.top[1];
  rep.lambda_max = ps.top.back();

  for (std::size_t c = 1; c < ps.top.size(); ++c) {
    const double v = ps.top[c];
    if (v >= iv.clo && v <= iv.chi) ++rep.cluster_count;
    else note_violation(rep, s.bulk + c, v, false);
  }

  const double scale = std::max(ps.scale, 1.0);
  auto count_lt = [&](double theta) { return inertia_below(m, theta).below; };
  auto count_le = [&](double theta) { return inertia_below(m, theta + 1e-12 * scale).below; };

  if (rep.lambda_min >= iv.blo && rep.lambda_bulk_max <= iv.bhi) {
    rep.bulk_count = s.bulk;
  } else {
    // the ends leave the interval: count exactly by slicing
    rep.method = "lanczos+inertia";
    const std::size_t le = std::min(s.bulk, count_le(iv.bhi));
    const std::size_t lt = count_lt(iv.blo);
    rep.bulk_count = le > lt ? le - lt : 0;
    if (rep.lambda_min < iv.blo) note_violation(rep, 1, rep.lambda_min, true);
    if (rep.lambda_bulk_max > iv.bhi) note_violation(rep, s.bulk, rep.lambda_bulk_max, true);
    // interior bulk violations are only counted, not listed
    const std::size_t missing = s.bulk - rep.bulk_count;
    const std::size_t listed = (rep.lambda_min < iv.blo ? 1 : 0) + (rep.lambda_bulk_max > iv.bhi ? 1 : 0);
    if (missing > listed) rep.violation_count += missing - listed;
  }

  const double mid = 0.5 * (iv.bhi + iv.clo);
  if (mid > rep.lambda_bulk_max) {
    rep.below_midpoint = s.bulk - 1;
    for (double v : ps.top)
      if (v < mid) ++rep.below_midpoint;
  } else if (opt.midpoint_by_inertia) {
    rep.below_midpoint = count_lt(mid);
  } else {
    rep.below_midpoint_known = false;
  }
  return rep;
}

}  // namespace simplex_spectra
