#include <doctest.h>

#include "emsde/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

using namespace emsde;

namespace {

State scalar(double v) { return State::Constant(1, v); }

SchemeSpec sit_spec() { return SchemeSpec{}; }

LyapunovPair quadratic_pair(double ubar) {
  LyapunovPair p;
  p.U = [](const State& x) { return x.squaredNorm(); };
  p.grad_U = [](const State& x) { return State(2.0 * x); };
  p.hess_U = [](const State& x) { return Square(2.0 * Square::Identity(x.size(), x.size())); };
  p.U_bar = [ubar](const State&) { return ubar; };
  return p;
}

}  // namespace

TEST_CASE("pairwise sum") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  CHECK(pairwise_sum(v) == 499500.0);
  CHECK(pairwise_sum(std::span<const double>()) == 0.0);
  std::vector<double> tiny(1 << 20, 0.1);
  CHECK(std::abs(pairwise_sum(tiny) - 0.1 * (1 << 20)) < 1e-8);
}

TEST_CASE("linear and log summaries") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto lin = summarize_linear(v);
  CHECK(lin.mean == 2.5);
  CHECK(lin.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(lin.n_samples == 4);
  CHECK_THROWS_AS(summarize_linear(std::vector<double>{}), InvalidArgument);

  const std::vector<double> logs{0.0, std::log(3.0)};
  const auto lg = summarize_log(logs);
  CHECK_FALSE(lg.log_domain);
  CHECK(lg.mean == doctest::Approx(2.0));
  CHECK(lg.std_error == doctest::Approx(1.0));

  const std::vector<double> big{800.0, 800.0, 800.0};
  const auto b = summarize_log(big);
  CHECK(b.log_domain);
  CHECK(b.log_mean == doctest::Approx(800.0));
  CHECK(b.rel_error == 0.0);
  CHECK(b.overflow_count == 3);
  CHECK_FALSE(b.usable);
  CHECK(std::isinf(b.mean));

  const std::vector<double> mixed{710.0, 0.0};
  const auto m = summarize_log(mixed);
  CHECK(m.overflow_count == 1);
  CHECK(m.usable);
  CHECK(m.log_mean == doctest::Approx(710.0 - std::log(2.0)));
  CHECK(m.rel_error == doctest::Approx(1.0).epsilon(1e-9));

  // log and linear paths agree below the switch
  const std::vector<double> mid{300.0, 301.0, 302.5};
  const auto lo = summarize_log(mid);
  CHECK_FALSE(lo.log_domain);
  const std::vector<double> shifted{400.0, 401.0, 402.5};
  const auto hi = summarize_log(shifted);
  CHECK(hi.log_domain);
  CHECK(hi.log_mean - lo.log_mean == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(hi.rel_error == doctest::Approx(lo.rel_error).epsilon(1e-10));
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 7, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
  CHECK_THROWS_WITH(parallel_for(100, 3,
                                 [](std::size_t i) {
                                   if (i == 10 || i == 90) throw std::runtime_error("at " + std::to_string(i));
                                 }),
                    "at 10");
  CHECK(default_workers() >= 1);
}

TEST_CASE("one-step functional matches a scalar recomputation") {
  const auto card = make_cubic1d(0.25);
  const double h = 0.1;
  const MasterPath master(h, 2, 1, std::vector<double>(4, 0.0));
  const auto part = Partition::uniform(1, h);
  FunctionalSpec f{card.pair, {h}, 4};
  const double got = exp_moment_log_functional(sit_spec(), card.problem, part, master, scalar(1.0), f, h);

  auto y = [](double s) { return 1.0 - s / (1.0 + s * s); };
  auto ubar = [](double x) { return 0.5 * std::pow(x, 6) - 1.5 * x * x; };
  double integral = 0.0;
  for (int j = 0; j < 4; ++j) integral += ubar(y(j * h / 4)) * (h / 4);
  const double expected = 0.25 * std::pow(y(h), 4) + integral;
  CHECK(got == doctest::Approx(expected).epsilon(1e-14));
  CHECK(y(h) == doctest::Approx(0.900990099));

  f.t_query = {0.0, h / 4, h};
  const auto all = functional_log_exponents(sit_spec(), card.problem, part, master, scalar(1.0), f);
  CHECK(all[0] == 0.25);
  CHECK(all[1] == doctest::Approx(0.25 * std::pow(y(h / 4), 4) + ubar(1.0) * h / 4).epsilon(1e-14));
  CHECK(all[2] == got);

  f.t_query = {h, 0.0};
  CHECK_THROWS_AS(functional_log_exponents(sit_spec(), card.problem, part, master, scalar(1.0), f),
                  InvalidArgument);
  f.t_query = {h};
  f.substeps = 8;
  CHECK_THROWS_AS(functional_log_exponents(sit_spec(), card.problem, part, master, scalar(1.0), f),
                  InvalidArgument);
}

TEST_CASE("path frozen at time zero contributes exp(U(x0))") {
  const auto card = make_cubic1d(0.1);
  const double x0 = 10.0;
  FunctionalSpec f{card.pair, {0.0, 0.5, 1.0}, 4};
  McConfig mc{64, 3, 6, 2};
  const std::vector<std::size_t> n_list{4};
  const auto est = estimate_exp_moment(sit_spec(), card.problem, n_list, 1.0, scalar(x0), f, mc);
  for (const auto& e : est[0]) {
    CHECK(e.log_mean == doctest::Approx(card.pair.U(scalar(x0))).epsilon(1e-14));
    CHECK(e.rel_error == 0.0);
    CHECK(e.tau_lt_T_count == 64);
  }
}

TEST_CASE("deterministic dynamics give zero standard error") {
  auto card = make_cubic1d(0.1);
  card.problem.sigma = [](const State&) { return Diffusion(Diffusion::Zero(1, 1)); };
  FunctionalSpec f{card.pair, default_t_query(1.0, 5), 4};
  McConfig mc{50, 1, 8, 1};
  const std::vector<std::size_t> n_list{16, 64};
  const auto est = estimate_exp_moment(sit_spec(), card.problem, n_list, 1.0, scalar(1.0), f, mc);
  for (const auto& row : est) {
    for (const auto& e : row) CHECK(e.std_error == 0.0);
  }
}

TEST_CASE("zero Ubar gives the mean of exp(U(Y_t))") {
  const auto card = make_cubic1d(0.1);
  const auto pair = quadratic_pair(0.0);
  FunctionalSpec f{pair, {0.5, 1.0}, 4};
  McConfig mc{200, 4, 6, 1};
  const std::vector<std::size_t> n_list{16};
  const auto est = estimate_exp_moment(sit_spec(), card.problem, n_list, 1.0, scalar(0.3), f, mc);
  const auto part = Partition::uniform(16, 1.0);
  for (std::size_t ti = 0; ti < 2; ++ti) {
    std::vector<double> v;
    for (std::size_t i = 0; i < mc.samples; ++i) {
      const auto master = generate(mc.seed, i, mc.levels, 1.0, 1);
      const auto path = simulate(sit_spec(), card.problem, part, scalar(0.3), coarsen(master, 16));
      v.push_back(std::exp(interpolate(sit_spec(), card.problem, path, part, master, f.t_query[ti]).squaredNorm()));
    }
    CHECK(est[0][ti].mean == doctest::Approx(summarize_linear(v).mean).epsilon(1e-13));
  }
}

TEST_CASE("shifting Ubar by a constant shifts each exponent by c (t ^ tau)") {
  const auto card = make_cubic1d(0.1);
  const auto part = Partition::uniform(32, 1.0);
  const double c = 0.7;
  FunctionalSpec base{quadratic_pair(0.0), default_t_query(1.0, 9), 4};
  FunctionalSpec shifted{quadratic_pair(c), base.t_query, 4};
  for (std::uint64_t id = 0; id < 20; ++id) {
    const auto master = generate(2, id, 8, 1.0, 1);
    const State x0 = scalar(id < 10 ? 0.5 : 4.0);
    double tau = 0.0;
    const auto a = functional_log_exponents(sit_spec(), card.problem, part, master, x0, base, &tau);
    const auto b = functional_log_exponents(sit_spec(), card.problem, part, master, x0, shifted);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(b[k] - a[k] == doctest::Approx(c * std::min(base.t_query[k], tau)).epsilon(1e-12));
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  const auto card = make_cubic1d(0.1);
  FunctionalSpec f{card.pair, default_t_query(1.0, 5), 4};
  const std::vector<std::size_t> n_list{8, 32};
  std::vector<std::string> csvs;
  for (int w : {1, 2, 5}) {
    McConfig mc{101, 9, 7, w};
    const auto est = estimate_exp_moment(sit_spec(), card.problem, n_list, 1.0, card.x0, f, mc);
    csvs.push_back(render_csv(est[0]) + render_csv(est[1]));
  }
  CHECK(csvs[0] == csvs[1]);
  CHECK(csvs[0] == csvs[2]);

  std::vector<std::string> strong;
  const std::vector<double> tq{0.5, 1.0};
  for (int w : {1, 3}) {
    McConfig mc{40, 2, 7, w};
    const auto err = strong_error(sit_spec(), sit_spec(), card.problem, n_list, 1.0, card.x0, 2.0, tq, mc);
    strong.push_back(render_csv(err[0]) + render_csv(err[1]));
  }
  CHECK(strong[0] == strong[1]);
}

TEST_CASE("strong error") {
  const auto card = make_cubic1d(0.1);
  McConfig mc{30, 1, 6, 1};
  const std::vector<double> tq{0.25, 1.0};
  const std::vector<std::size_t> same{64};
  const auto zero = strong_error(sit_spec(), sit_spec(), card.problem, same, 1.0, scalar(0.5), 2.0, tq, mc);
  for (const auto& e : zero[0]) CHECK(e.mean == 0.0);

  const std::vector<std::size_t> coarse{4, 16};
  const auto err = strong_error(sit_spec(), sit_spec(), card.problem, coarse, 1.0, scalar(0.5), 2.0, tq, mc);
  CHECK(err[0][1].mean > err[1][1].mean);
  CHECK(err[1][1].mean > 0.0);

  const std::vector<std::size_t> bad{3};
  CHECK_THROWS_AS(strong_error(sit_spec(), sit_spec(), card.problem, bad, 1.0, scalar(0.5), 2.0, tq, mc),
                  InvalidArgument);
  const std::vector<std::size_t> too_fine{128};
  CHECK_THROWS_AS(strong_error(sit_spec(), sit_spec(), card.problem, too_fine, 1.0, scalar(0.5), 2.0, tq, mc),
                  InvalidArgument);
}

TEST_CASE("consistency defect controls") {
  const auto card = make_cubic1d(0.1);
  std::vector<State> pts;
  for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) pts.push_back(scalar(x));
  std::vector<double> ts;
  for (int k = 2; k <= 10; k += 2) ts.push_back(std::pow(2.0, -k));

  const auto sit = consistency_defect(scheme_map(sit_spec(), card.problem), card.problem, pts, ts, 4000, 5);
  CHECK(sit.pass);

  SchemeSpec euler;
  euler.kind = SchemeKind::EulerStopped;
  const auto eu = consistency_defect(scheme_map(euler, card.problem), card.problem, pts, ts, 4000, 5);
  CHECK(eu.pass);
  for (const auto& p : eu.points) {
    CHECK(p.b == 0.0);
    CHECK(p.a == doctest::Approx(std::sqrt(p.t)).epsilon(1e-12));  // sup_K ||mu|| = 1
  }

  const OneStepMap zero = [](const State& x, double, const Noise&) { return State(State::Zero(x.size())); };
  const auto z = consistency_defect(zero, card.problem, pts, ts, 4000, 5);
  CHECK_FALSE(z.pass);
  CHECK_FALSE(z.a_decreases);

  const auto again = consistency_defect(scheme_map(sit_spec(), card.problem), card.problem, pts, ts, 4000, 5, 3);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    CHECK(again.points[k].a == sit.points[k].a);
    CHECK(again.points[k].b == sit.points[k].b);
  }
}

TEST_CASE("tail probe bookkeeping") {
  const auto card = make_cubic1d(0.1);
  TailProbeSpec spec;
  spec.p = 0.1;
  spec.q_exp = 2.0;
  spec.n_steps = 4;
  spec.schedule = {10, 100, 400};
  const auto probe = tail_growth_probe(sit_spec(), card.problem, card.x0, spec, 1, 2);
  REQUIRE(probe.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(probe[k].samples == spec.schedule[k]);
  CHECK(probe[2].max_log >= probe[1].max_log);
  CHECK(tail_growth_ratio(probe) == doctest::Approx(std::exp(probe[2].max_log - probe[0].max_log)).epsilon(1e-12));
  CHECK(tail_relative_drift(probe) ==
        doctest::Approx(std::abs(probe[2].estimate.mean / probe[1].estimate.mean - 1.0)).epsilon(1e-9));
  const auto serial = tail_growth_probe(sit_spec(), card.problem, card.x0, spec, 1, 1);
  CHECK(serial[2].estimate.log_mean == probe[2].estimate.log_mean);
  spec.schedule = {100, 10};
  CHECK_THROWS_AS(tail_growth_probe(sit_spec(), card.problem, card.x0, spec, 1, 1), InvalidArgument);
}

TEST_CASE("CSV rendering") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(2.0) == "2");
  McEstimate a;
  a.t = 0.5;
  a.mean = 1.25;
  a.std_error = 0.125;
  a.n_samples = 10;
  McEstimate b = a;
  b.log_domain = true;
  b.log_mean = 900.0;
  b.rel_error = 0.5;
  b.overflow_count = 2;
  b.tau_lt_T_count = 1;
  const std::vector<McEstimate> rows{a, b};
  CHECK(render_csv(rows) ==
        "t,estimate,std_error,n,overflow_count,tau_lt_T_count,log_domain\n"
        "0.5,1.25,0.125,10,0,0,0\n"
        "0.5,900,0.5,10,2,1,1\n");
}
