#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simplex_spectra/config.hpp"
#include "simplex_spectra/error.hpp"
#include "simplex_spectra/experiments.hpp"

using namespace simplex_spectra;

namespace {

enum Exit { kOk = 0, kConfig = 2, kCertificate = 3, kResource = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of random simplicial complexes: sampling, spectra, ensembles and oracles"};
  app.set_help_all_flag("--help-all");

  std::string command;
  std::string config_path;
  // every flag lands in the override map as a string; parsing happens once,
  // in the same place as for config files
  ConfigMap flags;
  std::vector<std::string> sets;
  bool inject = false, timings = false;

  app.add_option("command", command, "sample | spectrum | ensemble | confinement | gap | bound-compare | oracle-verify | bounds")
      ->required()
      ->check(CLI::IsMember({"sample", "spectrum", "ensemble", "confinement", "gap", "bound-compare",
                             "oracle-verify", "bounds"}));
  app.add_option("--config", config_path, "flat key = value file; flags override it");

  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  const Flag simple[] = {
      {"--d", "d", "cell dimension d (rows are (d-1)-cells)"},
      {"--n", "n", "vertex count, or comma list for sweeps"},
      {"--p", "p", "d-cell probability"},
      {"--dist", "dist", "entry law: bernoulli:P | rademacher | uniform:A,B | twopoint:X,Y,PI"},
      {"--k", "k", "Schatten index k, or comma list"},
      {"--trials", "trials", "trials per n"},
      {"--seed", "seed", "master seed"},
      {"--xi", "xi", "xi"},
      {"--xi-prime", "xi_prime", "xi'"},
      {"--out", "out", "output path (stdout if omitted)"},
      {"--format", "format", "json | csv"},
      {"--workers", "workers", "worker threads (default from SIMPLEX_SPECTRA_WORKERS, else 1)"},
      {"--dense-cap", "dense_cap", "largest N for a dense eigensolve"},
      {"--matrix", "matrix", "calA | A | H | Y | expected"},
  };
  std::vector<std::string> values(std::size(simple));
  std::vector<CLI::Option*> opts;
  for (std::size_t i = 0; i < std::size(simple); ++i)
    opts.push_back(app.add_option(simple[i].name, values[i], simple[i].help));
  opts[2]->excludes(opts[3]);
  app.add_option("--set", sets, "extra key=value setting (repeatable)");
  app.add_flag("--timings", timings, "record per-trial wall time (breaks byte-identical output)");
  app.add_flag("--inject-sign-flip", inject, "")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    ExperimentConfig cfg;
    cfg.kind = command;
    if (const char* w = std::getenv("SIMPLEX_SPECTRA_WORKERS")) cfg.apply({{"workers", w}});
    if (!config_path.empty()) {
      ConfigMap file = load_config(config_path);
      file.erase("kind");
      file.erase("command");
      cfg.apply(file);
    }
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw DomainError("--set expects key=value, got '" + s + "'");
      flags[normalize_key(s.substr(0, eq))] = s.substr(eq + 1);
    }
    for (std::size_t i = 0; i < std::size(simple); ++i)
      if (opts[i]->count() > 0) flags[simple[i].key] = values[i];
    if (timings) flags["timings"] = "true";
    if (inject) flags["inject_sign_flip"] = "true";
    cfg.apply(flags);
    cfg.kind = command;

    const Report r = run_experiment(cfg);
    write_output(emit(r, cfg.format), cfg.out);
    if (r.failed) return kCertificate;
    if (r.cap_hit) return kResource;
    return kOk;
  } catch (const CapExceeded& e) {
    std::cerr << "simplex-spectra: resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const ConvergenceError& e) {
    std::cerr << "simplex-spectra: no convergence: " << e.what() << "\n";
    return kResource;
  } catch (const DomainError& e) {
    std::cerr << "simplex-spectra: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "simplex-spectra: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "simplex-spectra: internal error: " << e.what() << "\n";
    return 1;
  }
}
