#include <doctest.h>

#include "emsde/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace emsde;

TEST_CASE("assertion tokens") {
  CHECK(parse_assertion("below_prefactor").kind == AssertionKind::BelowPrefactor);
  const auto a = parse_assertion("error_drop:8");
  CHECK(a.kind == AssertionKind::ErrorDrop);
  CHECK(a.threshold == 8.0);
  CHECK(parse_assertion("tail_drift:0.05").threshold == 0.05);
  CHECK_THROWS_AS(parse_assertion("error_drop"), ConfigError);
  CHECK_THROWS_AS(parse_assertion("faster_than_light"), ConfigError);
  CHECK(describe(a).find('8') != std::string::npos);
}

TEST_CASE("experiments from config take defaults per kind") {
  const auto e = experiment_from_config(Config::parse_string("name = demo\nM = 500\n"));
  CHECK(e.kind == ExperimentKind::ExpMoment);
  CHECK(e.model == "cubic1d");
  CHECK(e.scheme.kind == SchemeKind::StoppedIncrementTamed);
  CHECK(e.n_list == std::vector<std::size_t>{64, 256, 1024});
  CHECK(e.samples == 500);
  REQUIRE(e.expected.size() == 1);
  CHECK(e.expected[0].kind == AssertionKind::BelowPrefactor);

  const auto s = experiment_from_config(Config::parse_string("kind = strong_error\nN = 4, 16\nL = 6\n"));
  CHECK(s.expected[0].kind == AssertionKind::ErrorMonotone);

  const auto t = experiment_from_config(Config::parse_string(
      "kind = tail_probe\nscheme = euler\nstop = whole_space\nN = 4\nschedule = 10, 100\n"));
  CHECK(t.expected.empty());
  CHECK(t.scheme.stop.kind == StoppingFamily::Kind::WholeSpace);
  CHECK(t.scheme.kind == SchemeKind::EulerStopped);

  const auto x = experiment_from_config(Config::parse_string("model = lorenz\nx0 = 1, 2, 3\nrho = 4\n"));
  REQUIRE(x.x0.has_value());
  CHECK((*x.x0)[2] == 3.0);
  CHECK(*x.rho == 4.0);
}

TEST_CASE("malformed experiments are rejected") {
  auto bad = [](const char* text) { return experiment_from_config(Config::parse_string(text)); };
  CHECK_THROWS_AS(bad("model = brusselator\n"), ConfigError);
  CHECK_THROWS_AS(bad("scheme = rk4\n"), ConfigError);
  CHECK_THROWS_AS(bad("kind = dance\n"), ConfigError);
  CHECK_THROWS_AS(bad("N = 100\n"), ConfigError);
  CHECK_THROWS_AS(bad("N = 256, 64\n"), ConfigError);
  CHECK_THROWS_AS(bad("N = 1024\nL = 10\n"), ConfigError);
  CHECK_THROWS_AS(bad("L = 30\n"), ConfigError);
  CHECK_THROWS_AS(bad("T = 0\n"), ConfigError);
  CHECK_THROWS_AS(bad("M = 1\n"), ConfigError);
  CHECK_THROWS_AS(bad("q = 1\n"), ConfigError);
  CHECK_THROWS_AS(bad("substeps = 3\n"), ConfigError);
  CHECK_THROWS_AS(bad("stop = ball\n"), ConfigError);
  CHECK_THROWS_AS(bad("kind = tail_probe\nN = 4, 8\nschedule = 10\n"), ConfigError);
  CHECK_THROWS_AS(bad("kind = tail_probe\nN = 4\nschedule = 10, 10\n"), ConfigError);
  CHECK_THROWS_AS(bad("kind = tail_probe\nN = 4\n"), ConfigError);
  CHECK_THROWS_AS(bad("expect = nonsense\n"), ConfigError);
}

TEST_CASE("canned experiments") {
  const auto names = canned_experiment_names();
  CHECK(names.size() == 5);
  for (const auto& n : names) {
    const auto e = canned_experiment(n);
    CHECK(e.name == n);
    CHECK_NOTHROW(e.validate());
    CHECK_FALSE(e.expected.empty());
  }
  CHECK_THROWS_AS(canned_experiment("nope"), ConfigError);
  CHECK(canned_experiment("sit_stabilizes").schedule.back() == 100000);
}

TEST_CASE("small exp-moment run writes one table per N") {
  auto e = canned_experiment("cubic_preserved");
  e.samples = 200;
  e.n_list = {16, 64};
  e.levels = 8;
  const auto dir = std::filesystem::temp_directory_path() / "emsde_test_run";
  std::filesystem::remove_all(dir);
  e.out_dir = dir.string();
  const auto r = run(e, 2);
  REQUIRE(r.tables.size() == 2);
  CHECK(r.tables[0].file_name == "cubic_preserved_N16.csv");
  CHECK(r.tables[1].file_name == "cubic_preserved_N64.csv");
  CHECK(r.tables[0].csv.rfind("t,estimate,std_error,n,", 0) == 0);
  std::ifstream in(dir / "cubic_preserved_N64.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.tables[1].csv);
  REQUIRE(r.outcomes.size() == 2);
  CHECK(r.pass());
  std::filesystem::remove_all(dir);
}

TEST_CASE("small strong-error, tail and residual runs") {
  Experiment s;
  s.kind = ExperimentKind::StrongError;
  s.n_list = {4, 16, 64};
  s.levels = 8;
  s.samples = 100;
  s.expected = {{AssertionKind::ErrorMonotone, 0.0}, {AssertionKind::ErrorDrop, 2.0}};
  const auto rs = run(s, 1);
  CHECK(rs.tables.size() == 3);
  CHECK(rs.pass());

  Experiment t;
  t.kind = ExperimentKind::TailProbe;
  t.n_list = {8};
  t.p = 0.1;
  t.q_exp = 2.0;
  t.schedule = {50, 100, 200};
  t.expected = {{AssertionKind::TailDrift, 10.0}, {AssertionKind::ErrorDrop, 2.0}};
  const auto rt = run(t, 1);
  REQUIRE(rt.tables.size() == 1);
  CHECK(rt.outcomes[0].pass);
  CHECK_FALSE(rt.outcomes[1].pass);  // error assertions do not apply to a tail probe

  Experiment z;
  z.name = "zoo";
  z.kind = ExperimentKind::Residuals;
  z.residual_points = 500;
  z.expected = {{AssertionKind::ResidualsPass, 0.0}};
  const auto rz = run(z, 1);
  CHECK(rz.pass());
  CHECK(rz.tables[0].file_name == "zoo.csv");
  std::size_t lines = 0;
  for (char c : rz.tables[0].csv) lines += c == '\n';
  CHECK(lines == 10);
}
