#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "simplex_spectra/config.hpp"
#include "simplex_spectra/distribution.hpp"
#include "simplex_spectra/theory_bounds.hpp"

namespace simplex_spectra {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "simplex-spectra/report/1";

struct ExperimentConfig {
  std::string kind = "ensemble";  // sample spectrum ensemble confinement gap bound-compare oracle-verify bounds
  std::size_t d = 2;
  std::vector<std::uint32_t> n{40};
  bool has_dist = false;  // law given as a DistributionSpec instead of p
  double p = 0.5;
  DistributionSpec dist{};
  std::string matrix;  // calA, A, H, Y, expected; empty picks calA for p and H for a law
  std::vector<unsigned> k{2};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  double xi = 0.75;
  double xi_prime = 1.0;
  double epsilon = 0.1;  // echoed only
  BoundConstants constants{};
  double cluster_claim_p_max = 0.25;
  double lanczos_tol = 1e-8;
  std::size_t dense_cap = 8192;
  std::size_t dense_auto_max = 2500;
  bool timings = false;
  bool inject_sign_flip = false;

  // oracle-verify sizes
  std::uint32_t oracle_n_exhaustive = 5;
  double oracle_p = 0.3;
  std::uint32_t oracle_n_sampled = 6;
  std::size_t oracle_seeds = 20;
  unsigned oracle_kmax = 3;
  std::uint32_t oracle_n_lemma = 12;

  // not part of the result
  std::string out;
  std::string format = "json";
  unsigned workers = 1;

  // Unknown keys and unparsable values throw DomainError.
  void apply(const ConfigMap& m);
  void validate() const;

  DistributionSpec law() const { return has_dist ? dist : DistributionSpec::bernoulli(p); }
  std::string matrix_kind() const { return matrix.empty() ? (has_dist ? "H" : "calA") : matrix; }
  ojson echo() const;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::uint32_t n = 0;
  double norm = kNaN;
  double gap = kNaN;
  long long bulk_count = -1;
  long long cluster_count = -1;
  double lambda_min = kNaN;
  double lambda_max = kNaN;
  double wall_ms = kNaN;
  std::string error;
  ojson extra = ojson::object();
};

struct Summary {
  std::size_t count = 0;
  double mean = kNaN, stderr_ = kNaN, min = kNaN, q05 = kNaN, q25 = kNaN, median = kNaN, q75 = kNaN, q95 = kNaN,
         max = kNaN;
};
// NaNs are skipped; quantiles interpolate linearly between order statistics.
Summary summarize(std::vector<double> values);
ojson to_json(const Summary& s);

struct Report {
  ojson json;
  std::vector<TrialRecord> trials;
  std::string csv;       // set by commands whose CSV is not the trial table
  bool failed = false;   // a certificate or oracle check failed
  bool cap_hit = false;  // some trial hit a resource cap
};

Report run_sample(const ExperimentConfig& c);
Report run_spectrum(const ExperimentConfig& c);
Report run_ensemble(const ExperimentConfig& c);
Report confinement_experiment(const ExperimentConfig& c);
Report gap_experiment(const ExperimentConfig& c);
Report bound_compare(const ExperimentConfig& c);
Report oracle_verify(const ExperimentConfig& c);
Report bounds_table(const ExperimentConfig& c);

// dispatch on c.kind
Report run_experiment(const ExperimentConfig& c);

// trial, seed, norm, gap, bulk_count, cluster_count, lambda_min, lambda_max, wall_ms
std::string trials_csv(const std::vector<TrialRecord>& t);
std::string emit(const Report& r, const std::string& format);
// writes to path, or stdout when path is empty or "-"
void write_output(const std::string& text, const std::string& path);

}  // namespace simplex_spectra
