#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simplex_spectra/lanczos.hpp"
#include "simplex_spectra/sparse_matrix.hpp"

namespace simplex_spectra {

struct SpectrumOptions {
  std::size_t dense_cap = 8192;        // hard limit for a full dense eigensolve
  std::size_t dense_auto_max = 2500;   // above this, gap/confinement go through Lanczos
  std::size_t spot_checks = 3;         // eigenpairs whose residual is measured in full mode
  bool midpoint_by_inertia = false;    // on the Lanczos path, pay for a dense LDL^T to get below_midpoint
  LanczosOptions lanczos{};
};

struct SpectrumReport {
  std::string method;
  std::size_t dim = 0;
  std::vector<double> eigenvalues;  // ascending; all of them in full mode, else empty
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double tolerance = 0.0;  // achieved relative residual
  std::size_t iterations = 0;

  bool full() const { return dim > 0 && eigenvalues.size() == dim; }
};

SpectrumReport full_spectrum(const SparseSymmetricMatrix& m, const SpectrumOptions& opt = {});

enum class Which { Min, Max, Both };

// Throws ConvergenceError if Lanczos does not reach tol within max_iter.
SpectrumReport extreme_eigs(const SparseSymmetricMatrix& m, Which which = Which::Both, double tol = 1e-8,
                            std::size_t max_iter = 0);

double operator_norm(const SpectrumReport& r);
double operator_norm(const SparseSymmetricMatrix& m, double tol = 1e-8);

// (sum lambda^p)^(1/p) for even p, from a full spectrum
double schatten(const SpectrumReport& r, unsigned p);
double schatten(const SparseSymmetricMatrix& m, unsigned p, const SpectrumOptions& opt = {});

// The eigenvalues either side of the split at index C(n-1, d) (1-based, ascending).
struct GapResult {
  double lower = 0.0;  // lambda_{C(n-1,d)}
  double upper = 0.0;  // lambda_{C(n-1,d)+1}
  double gap = 0.0;
  std::string method;
};

GapResult spectral_gap(const SpectrumReport& full, std::uint32_t n, std::size_t d);
GapResult spectral_gap(const SparseSymmetricMatrix& m, std::uint32_t n, std::size_t d,
                       const SpectrumOptions& opt = {});

struct ConfinementViolation {
  std::size_t index;  // 1-based ascending
  double value;
  bool bulk;          // expected in the bulk interval
};

struct ConfinementReport {
  std::size_t dim = 0;
  std::size_t expected_bulk = 0;
  std::size_t expected_cluster = 0;
  std::size_t bulk_count = 0;     // #{i <= C(n-1,d) : lambda_i in bulk interval}
  std::size_t cluster_count = 0;  // #{i >  C(n-1,d) : lambda_i in cluster interval}
  std::size_t below_midpoint = 0; // #{lambda < (bulk_hi + cluster_lo)/2}
  bool below_midpoint_known = true;
  double bulk_lo = 0, bulk_hi = 0, cluster_lo = 0, cluster_hi = 0;
  double lambda_min = 0, lambda_bulk_max = 0, lambda_cluster_min = 0, lambda_max = 0;
  std::size_t violation_count = 0;
  std::vector<ConfinementViolation> violations;  // first few only
  std::string method;

  bool exact() const { return bulk_count == expected_bulk && cluster_count == expected_cluster; }
};

ConfinementReport confinement_report(const SpectrumReport& full, std::uint32_t n, std::size_t d, double p,
                                     double xi);
// Uses a full spectrum up to dense_auto_max, otherwise Lanczos on both ends with
// exact inertia counts as fallback whenever an end falls outside its interval.
ConfinementReport confinement_report(const SparseSymmetricMatrix& m, std::uint32_t n, std::size_t d, double p,
                                     double xi, const SpectrumOptions& opt = {});

}  // namespace simplex_spectra
