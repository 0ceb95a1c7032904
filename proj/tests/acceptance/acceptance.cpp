// One line per criterion: "criterion N: PASS|FAIL - detail". Exit status is
// nonzero if any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "simplex_spectra/cell_complex.hpp"
#include "simplex_spectra/experiments.hpp"
#include "simplex_spectra/inertia.hpp"
#include "simplex_spectra/random_models.hpp"
#include "simplex_spectra/rng.hpp"
#include "simplex_spectra/spectrum.hpp"
#include "simplex_spectra/theory_bounds.hpp"
#include "simplex_spectra/trace_oracle.hpp"
#include "simplex_spectra/word_graph.hpp"
#include "simplex_spectra/words.hpp"

using namespace simplex_spectra;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int prec = 6) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << x;
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome c01() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string vals;
  for (unsigned k = 1; k <= 3; ++k) {
    const double ws = trace_walk_sum(2, 5, DistributionSpec::bernoulli(0.3), k);
    const double ex = trace_exhaustive(2, 5, 0.3, k);
    worst = std::max(worst, rel(ws, ex));
    vals += " k=" + std::to_string(k) + ":" + fmt(ex, 10);
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-10 && secs < 60.0,
          "max rel delta " + fmt(worst, 3) + ", " + fmt(secs, 3) + " s;" + vals};
}

Outcome c02() {
  double worst = 0.0;
  std::size_t checks = 0;
  for (const DistributionSpec& law : {DistributionSpec::bernoulli(0.3), DistributionSpec::rademacher(),
                                      DistributionSpec::uniform(0.0, 1.0)}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const SparseSymmetricMatrix h = build_H(2, 6, law, derive_seed(2024, s));
      const SpectrumReport sp = full_spectrum(h);
      for (unsigned k = 1; k <= 3; ++k) {
        double tr = 0.0;
        for (double x : sp.eigenvalues) tr += std::pow(x, 2.0 * k);
        const double ws = trace_walk_sum(2, 6, law, k, &h);
        worst = std::max(worst, rel(ws, tr));
        ++checks;
      }
    }
  }
  return {worst <= 1e-8, std::to_string(checks) + " checks over 3 laws, max rel delta " + fmt(worst, 3)};
}

Outcome c03() {
  std::size_t mismatches = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ComplexSample x = sample_complex(1, 30, 0.4, derive_seed(7, s));
    std::vector<std::vector<int>> adj(30, std::vector<int>(30, 0));
    for (const Cell& e : x.present_cells()) {
      adj[e[0]][e[1]] = 1;
      adj[e[1]][e[0]] = 1;
    }
    const DenseMatrix a = build_A(x).to_dense();
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = 0; j < 30; ++j)
        if (a(i, j) != static_cast<double>(adj[i][j])) ++mismatches;
  }
  return {mismatches == 0, "100 seeds, n=30, p=0.4: " + std::to_string(mismatches) + " mismatched entries"};
}

Outcome c04() {
  const ComplexSample x = sample_complex(2, 6, 1.0, 1);
  const SpectrumReport s = full_spectrum(build_A(x));
  std::vector<double> want(10, -2.0);
  want.insert(want.end(), 5, 4.0);
  double err = 0.0, nerr = 0.0;
  std::vector<double> neg;
  for (double v : s.eigenvalues) neg.push_back(-v);
  std::sort(neg.begin(), neg.end());
  for (std::size_t i = 0; i < want.size(); ++i) {
    err = std::max(err, std::abs(s.eigenvalues[i] - want[i]));
    nerr = std::max(nerr, std::abs(neg[i] - want[i]));
  }
  std::string detail = "max |lambda - {-2 x10, 4 x5}| = " + fmt(err, 3);
  if (err > 1e-9 && nerr <= 1e-9) detail += "; SPECTRUM IS NEGATED, global sign convention is opposite";
  return {err <= 1e-9, detail};
}

Outcome c05() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto laws = default_check_laws();
  std::size_t total = 0, passed = 0;
  std::string first_bad;
  for (unsigned k = 1; k <= 3; ++k) {
    for (const Word& w : enumerate_closed_words(2, k)) {
      ++total;
      const TreeCertificate tc = tree_reduce(WordGraph::from_word(w), 12, laws);
      const PruneCertificate pc = leaf_prune(tc.output, k, 12, laws);
      if (tc.ok() && pc.ok()) ++passed;
      else if (first_bad.empty()) first_bad = w.str();
    }
  }
  const double secs = seconds_since(t0);
  std::string detail = std::to_string(passed) + "/" + std::to_string(total) + " words, " + fmt(secs, 3) + " s";
  if (!first_bad.empty()) detail += "; first failure " + first_bad;
  return {total > 0 && passed == total && secs < 300.0, detail};
}

ExperimentConfig ensemble(std::size_t d, std::vector<std::uint32_t> n, double p, std::size_t trials) {
  ExperimentConfig c;
  c.kind = "ensemble";
  c.d = d;
  c.n = std::move(n);
  c.p = p;
  c.trials = trials;
  c.seed = 20240601;
  return c;
}

Outcome c06() {
  const Report r1 = run_experiment(ensemble(1, {2000}, 0.5, 10));
  const double m1 = r1.json["summary"][0]["norm"]["mean"].get<double>();
  const bool ok1 = m1 >= 1.94 && m1 <= 2.06;

  const Report r2 = run_experiment(ensemble(2, {40, 80, 120}, 0.5, 50));
  std::vector<double> means;
  for (const auto& e : r2.json["summary"]) means.push_back(e["norm"]["mean"].get<double>());
  bool decreasing = true;
  for (std::size_t i = 1; i < means.size(); ++i) decreasing = decreasing && means[i] < means[i - 1];
  const double target = 2.0 * std::sqrt(2.0);
  const double dev = rel(means.back(), target);
  std::string detail = "d=1 n=2000 mean " + fmt(m1) + (ok1 ? " ok" : " out of [1.94,2.06]") + "; d=2 means";
  for (double m : means) detail += " " + fmt(m);
  detail += decreasing ? " (decreasing)" : " (NOT strictly decreasing)";
  detail += ", final within " + fmt(100 * dev, 3) + "% of 2sqrt2";
  return {ok1 && decreasing && dev <= 0.12, detail};
}

ExperimentConfig regime(const std::string& kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.d = 2;
  c.n = {120};
  c.p = 0.2;
  c.xi = 0.75;
  c.trials = 100;
  c.seed = 777;
  return c;
}

Outcome c07() {
  const Report r = run_experiment(regime("confinement"));
  const auto& s = r.json["summary"][0];
  const double frac = s["exact_fraction"].get<double>();
  return {frac >= 0.95, std::to_string(s["exact_trials"].get<long long>()) + "/100 trials exact (7021 bulk, 119 cluster), " +
                            std::to_string(s["errors"].get<long long>()) + " errors"};
}

Outcome c08() {
  const Report r = run_experiment(regime("gap"));
  const auto& s = r.json["summary"][0];
  const double med = s["relative_deviation"]["median"].get<double>();
  return {med <= 0.25, "median gap " + fmt(s["gap"]["median"].get<double>()) + " vs formula " +
                           fmt(s["formula"].get<double>()) + ", median relative deviation " + fmt(med, 4)};
}

Outcome c09() {
  const std::size_t trials = 2000;
  std::vector<double> norms(trials);
  for (std::size_t t = 0; t < trials; ++t) norms[t] = operator_norm(build_Y(2, 30, 0.25, derive_seed(99, t)));
  double mean = 0.0;
  for (double x : norms) mean += x;
  mean /= trials;
  const double rate = talagrand_rate(2, 3.0 / 16.0);
  bool ok = true;
  std::string detail = "mean " + fmt(mean) + ";";
  for (double t : {2.0, 4.0, 6.0}) {
    const double emp =
        static_cast<double>(std::count_if(norms.begin(), norms.end(), [&](double x) { return x >= mean + t; })) /
        trials;
    const double bound = std::exp(-rate * t * t);
    ok = ok && emp <= bound;
    detail += " t=" + fmt(t) + ": " + fmt(emp, 4) + " <= " + fmt(bound, 4);
  }
  return {ok, detail};
}

Outcome c10() {
  ExperimentConfig c;
  c.kind = "bound-compare";
  c.d = 2;
  c.n = {5};
  c.p = 0.3;
  c.k = {2, 3};
  const Report r = run_experiment(c);
  bool ok = true;
  std::string detail;
  for (const auto& row : r.json["rows"]) {
    ok = ok && row["holds"].get<bool>();
    detail += "k=" + std::to_string(row["k"].get<unsigned>()) + ": " + fmt(row["schatten_moment"].get<double>()) +
              " <= " + fmt(row["bound"].get<double>()) + " (margin " + fmt(row["margin"].get<double>()) + ") ";
  }
  return {ok, detail};
}

Outcome c11() {
  std::size_t instances = 0, intervals = 0, mismatches = 0, maxdim = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t d = 1 + s % 3;
    const std::uint32_t n = d == 1 ? 200 + 90 * static_cast<std::uint32_t>(s) : d == 2 ? 20 + 2 * static_cast<std::uint32_t>(s) : 14;
    const double p = 0.1 + 0.04 * static_cast<double>(s);
    const SparseSymmetricMatrix m = build_A(sample_complex(d, n, p, derive_seed(31, s)));
    if (m.dim() > 2000) continue;
    ++instances;
    maxdim = std::max(maxdim, m.dim());
    const SpectrumReport sp = full_spectrum(m);
    const double lo = sp.lambda_min, hi = sp.lambda_max;
    for (int i = 0; i < 4; ++i) {
      const double a = lo + (hi - lo) * (0.13 + 0.2 * i), b = a + (hi - lo) * 0.17;
      const InertiaCount ia = inertia_below(m, a), ib = inertia_below(m, b);
      const auto cnt = [&](double x) {
        return static_cast<std::size_t>(std::lower_bound(sp.eigenvalues.begin(), sp.eigenvalues.end(), x) -
                                        sp.eigenvalues.begin());
      };
      if (ib.below - ia.below != cnt(ib.theta_used) - cnt(ia.theta_used)) ++mismatches;
      ++intervals;
    }
  }
  return {instances == 20 && mismatches == 0,
          std::to_string(instances) + " instances (max N " + std::to_string(maxdim) + "), " +
              std::to_string(intervals) + " intervals, " + std::to_string(mismatches) + " mismatches"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c12() {
  const char* cli = std::getenv("SIMPLEX_SPECTRA_CLI");
#ifdef SIMPLEX_SPECTRA_CLI
  if (!cli) cli = SIMPLEX_SPECTRA_CLI;
#endif
  if (!cli) return {false, "no CLI path (set SIMPLEX_SPECTRA_CLI)"};
  const std::vector<std::string> runs = {
      "sample --d 2 --n 8 --p 0.3 --seed 5",
      "sample --d 2 --n 8 --p 0.3 --seed 5 --format csv",
      "spectrum --d 2 --n 8 --p 0.3 --seed 5",
      "ensemble --d 2 --n 10,14 --p 0.3 --trials 4 --seed 5 --workers 2",
      "ensemble --d 2 --n 10,14 --p 0.3 --trials 4 --seed 5 --format csv",
      "confinement --d 2 --n 16 --p 0.2 --trials 3 --seed 5",
      "gap --d 2 --n 16 --p 0.2 --trials 3 --seed 5",
      "bound-compare --d 2 --n 5 --p 0.3 --k 2,3",
      "oracle-verify --set oracle_kmax=2 --set oracle_seeds=3",
      "bounds --d 2 --n 120 --p 0.2 --k 2,3",
  };
  std::size_t same = 0;
  std::string bad;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string out[2];
    int rc[2];
    for (int rep = 0; rep < 2; ++rep) {
      const std::string path = "acceptance_determinism_" + std::to_string(i) + "_" + std::to_string(rep) + ".out";
      rc[rep] = std::system((std::string("\"") + cli + "\" " + runs[i] + " --out " + path).c_str());
      out[rep] = slurp(path);
      std::remove(path.c_str());
    }
    if (rc[0] == 0 && rc[1] == 0 && !out[0].empty() && out[0] == out[1]) ++same;
    else if (bad.empty()) bad = runs[i] + " (rc " + std::to_string(rc[0]) + ")";
  }
  std::string detail = std::to_string(same) + "/" + std::to_string(runs.size()) + " runs byte-identical";
  if (!bad.empty()) detail += "; first mismatch: " + bad;
  return {same == runs.size(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> all = {c01, c02, c03, c04, c05, c06, c07, c08, c09, c10, c11, c12};
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) pick.push_back(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (pick.empty())
    for (int i = 1; i <= 12; ++i) pick.push_back(i);
  int failures = 0;
  for (int id : pick) {
    if (id < 1 || id > 12) {
      std::cerr << "no criterion " << id << "\n";
      return 2;
    }
    Outcome o;
    try {
      o = all[static_cast<std::size_t>(id - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
