#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simplex_spectra/config.hpp"
#include "simplex_spectra/error.hpp"
#include "simplex_spectra/experiments.hpp"
#include "simplex_spectra/rng.hpp"

using namespace simplex_spectra;

namespace {

ExperimentConfig small(const std::string& kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.d = 2;
  c.n = {10};
  c.p = 0.3;
  c.trials = 4;
  c.seed = 11;
  c.k = {2};
  return c;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("config grammar") {
  const auto m = parse_config("# comment\n d = 3 \n\nn=10,20 # trailing\nxi-prime = 0.5\n");
  CHECK(m.at("d") == "3");
  CHECK(m.at("n") == "10,20");
  CHECK(m.at("xi_prime") == "0.5");
  CHECK_THROWS_AS(parse_config("d 3"), DomainError);
  CHECK_THROWS_AS(parse_config("d=1\nd=2"), DomainError);
  CHECK_THROWS_AS(parse_config("bad key=1"), DomainError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), IoError);

  ExperimentConfig c;
  c.apply(m);
  CHECK(c.d == 3);
  CHECK(c.n == std::vector<std::uint32_t>{10, 20});
  CHECK(c.xi_prime == 0.5);
  c.apply({{"dist", "rademacher"}});
  CHECK(c.has_dist);
  CHECK(c.matrix_kind() == "H");
  c.apply({{"p", "0.2"}});
  CHECK_FALSE(c.has_dist);
  CHECK_THROWS_AS(c.apply({{"colour", "blue"}}), DomainError);
  CHECK_THROWS_AS(c.apply({{"trials", "-3"}}), DomainError);
  CHECK_THROWS_AS(c.apply({{"xi", "abc"}}), DomainError);
  ExperimentConfig bad = small("ensemble");
  bad.n = {2};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = small("nonsense");
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = small("ensemble");
  bad.p = 1.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("summary statistics") {
  const Summary s = summarize({4.0, 1.0, 3.0, 2.0, NAN});
  CHECK(s.count == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.median == doctest::Approx(2.5));
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.q25 == doctest::Approx(1.75));
  CHECK(s.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(summarize({}).count == 0);
}

TEST_CASE("ensemble report: determinism, worker invariance, recomputable summary") {
  ExperimentConfig c = small("ensemble");
  c.n = {8, 12};
  const Report a = run_experiment(c);
  const Report b = run_experiment(c);
  CHECK(emit(a, "json") == emit(b, "json"));
  CHECK(emit(a, "csv") == emit(b, "csv"));
  c.workers = 3;
  const Report w = run_experiment(c);
  CHECK(emit(a, "json") == emit(w, "json"));
  CHECK(a.trials.size() == 8);
  CHECK(lines(emit(a, "csv")) == 8 + 1);
  CHECK(emit(a, "csv").rfind("trial,seed,norm,gap,bulk_count,cluster_count,lambda_min,lambda_max,wall_ms\n", 0) == 0);

  // JSON parses back, and the summaries match the records
  const auto j = ojson::parse(emit(a, "json"));
  CHECK(j["schema"] == kReportSchema);
  for (const auto& e : j["summary"]) {
    std::vector<double> v;
    for (const auto& t : j["trials"])
      if (t["n"] == e["n"]) v.push_back(t["norm"].get<double>());
    const Summary s = summarize(v);
    CHECK(std::abs(s.mean - e["norm"]["mean"].get<double>()) <= 1e-12);
    CHECK(std::abs(s.median - e["norm"]["median"].get<double>()) <= 1e-12);
  }
  // per-trial seeds are (master, index)
  for (std::size_t i = 0; i < a.trials.size(); ++i) CHECK(a.trials[i].seed == derive_seed(11, i));
  // rerunning one trial alone reproduces it
  ExperimentConfig one = small("ensemble");
  one.n = {8};
  one.trials = 1;
  one.seed = 11;
  CHECK(run_experiment(one).trials[0].norm == a.trials[0].norm);
}

TEST_CASE("timings only appear on request") {
  ExperimentConfig c = small("ensemble");
  CHECK(emit(run_experiment(c), "json").find("wall_ms") == std::string::npos);
  c.timings = true;
  CHECK(emit(run_experiment(c), "json").find("wall_ms") != std::string::npos);
}

TEST_CASE("confinement and gap experiments") {
  ExperimentConfig c = small("confinement");
  c.n = {12};
  const Report r = run_experiment(c);
  const auto& s = r.json["summary"][0];
  CHECK(s["pascal_ok"] == true);
  CHECK(s["expected_bulk"] == 55);
  CHECK(s["claim"]["evaluated"] == false);  // p = 0.3 is above the default claim gate
  for (const auto& t : r.trials) {
    CHECK(t.error.empty());
    CHECK(t.bulk_count >= 0);
  }
  c.kind = "gap";
  const Report g = run_experiment(c);
  CHECK(g.json["summary"][0]["gap_nonnegative"] == true);
  c.p = 1.0;
  CHECK_THROWS_AS(run_experiment(c), DomainError);
}

TEST_CASE("bound-compare") {
  ExperimentConfig c = small("bound-compare");
  c.n = {5};
  c.k = {2, 3};
  const Report r = run_experiment(c);
  REQUIRE(r.json["rows"].size() == 2);
  for (const auto& row : r.json["rows"]) {
    CHECK(row["method"] == "exhaustive");
    CHECK(row["oracle_relative_delta"].get<double>() < 1e-10);
    CHECK(row["margin"].get<double>() == doctest::Approx(row["bound"].get<double>() - row["schatten_moment"].get<double>()));
  }
  c.k = {1};
  CHECK_THROWS_AS(run_experiment(c), DomainError);
  // beyond the walk budget: Monte Carlo
  c.k = {4};
  c.n = {14};
  c.trials = 3;
  const Report mc = run_experiment(c);
  CHECK(mc.json["rows"][0]["method"] == "monte-carlo");
}

TEST_CASE("oracle-verify passes, and catches an injected sign flip") {
  ExperimentConfig c = small("oracle-verify");
  c.oracle_kmax = 2;
  c.oracle_seeds = 3;
  const Report ok = run_experiment(c);
  CHECK(ok.json["ok"] == true);
  CHECK_FALSE(ok.failed);
  c.inject_sign_flip = true;
  const Report bad = run_experiment(c);
  CHECK(bad.failed);
  CHECK(bad.json["orientation"]["ok"] == false);
  CHECK(bad.json["complete_complex"]["ok"] == false);
}

TEST_CASE("sample, spectrum and bounds outputs") {
  ExperimentConfig c = small("sample");
  const Report s = run_experiment(c);
  CHECK(s.json["sample"]["d"] == 2);
  CHECK(lines(emit(s, "csv")) >= 1);
  c.kind = "spectrum";
  const Report sp = run_experiment(c);
  CHECK(sp.json["spectrum"]["eigenvalues"].size() == 45);
  CHECK(lines(emit(sp, "csv")) == 45);
  CHECK(std::abs(sp.json["spectrum"]["trace"].get<double>()) < 1e-9);
  c.kind = "bounds";
  c.n = {120};
  c.p = 0.2;
  c.xi = 1.0;
  const Report b = run_experiment(c);
  CHECK(b.json["values"]["gamma"].is_null());
  CHECK(b.json["values"].contains("gamma_error"));
  CHECK(b.json["values"]["talagrand_rate"].get<double>() == doctest::Approx(0.16 / 12));
}

TEST_CASE("output goes to files") {
  const std::string path = "unit_test_output.json";
  write_output("{}\n", path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "{}\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_output("x", "/nonexistent/dir/out.json"), IoError);
}

}  // TEST_SUITE
