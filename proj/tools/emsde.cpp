// Command-line front end: experiments, classifiers, bounds and diagnostics.

#include "emsde/analysis.hpp"
#include "emsde/config.hpp"
#include "emsde/experiments.hpp"
#include "emsde/lyapunov.hpp"
#include "emsde/montecarlo.hpp"
#include "emsde/schemes.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace emsde;

namespace {

constexpr int kAssertionFailure = 1;
constexpr int kUsageError = 2;

StoppingFamily stop_from_name(const std::string& s) {
  if (s == "whole_space") return StoppingFamily::whole_space();
  if (s == "norm_level") return StoppingFamily::norm_level();
  if (s == "domain_and_norm_level") return StoppingFamily::domain_and_norm_level();
  throw ConfigError("unknown stopping family '" + s + "'");
}

std::vector<State> consistency_points(const ModelCard& card, std::size_t count, double lo, double hi) {
  const int d = card.problem.d;
  std::vector<State> pts;
  if (d == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      State x(1);
      x[0] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      pts.push_back(x);
    }
  } else {
    SamplingBox box{State::Constant(d, lo), State::Constant(d, hi)};
    pts = halton_samples(box, count);
  }
  std::erase_if(pts, [&](const State& x) { return !card.problem.in_domain(x); });
  if (pts.empty()) throw ConfigError("no sample point of [lo, hi]^d lies in the model domain");
  return pts;
}

void print_outcomes(const ExperimentResult& res) {
  for (const auto& o : res.outcomes) {
    std::cout << (o.pass ? "PASS " : "FAIL ") << o.description;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential-moment experiments for stopped and tamed SDE schemes"};
  app.require_subcommand(1);
  int workers = default_workers();
  app.add_option("--workers", workers, "Worker threads (never changes results)")
      ->check(CLI::PositiveNumber);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run an experiment from a config file or by name");
  std::string config_path;
  std::string canned;
  std::string out_override;
  std::string m_override;
  std::optional<std::uint64_t> seed_override;
  run_cmd->add_option("config", config_path, "Config file (key = value lines)");
  run_cmd->add_option("--experiment", canned, "Canned experiment name");
  run_cmd->add_option("--out", out_override, "Output directory for CSV files");
  run_cmd->add_option("--M", m_override, "Override the sample count");
  run_cmd->add_option("--seed", seed_override, "Override the seed");
  run_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  bool list_canned = false;
  run_cmd->add_flag("--list", list_canned, "List canned experiments");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Finiteness verdict for E[exp(p|Y|^q)]");
  std::string scheme_name;
  double q_exp = 0.0;
  double p_val = 1.0;
  bool show_basis = false;
  classify_cmd->add_option("--scheme", scheme_name, "Scheme kind")->required();
  classify_cmd->add_option("--q", q_exp, "Exponent q of the functional")->required();
  classify_cmd->add_option("--p", p_val, "Coefficient p")->check(CLI::PositiveNumber);
  classify_cmd->add_flag("--basis", show_basis, "Append the basis tag");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "Log of the moment-bound prefactor, one CSV line");
  BoundInputs bin;
  std::optional<double> alpha;
  bool header = false;
  bound_cmd->add_option("--rho", bin.rho, "rho")->required();
  bound_cmd->add_option("--c", bin.c, "Growth constant c")->required();
  bound_cmd->add_option("--p", bin.p, "Lyapunov degree p")->required();
  bound_cmd->add_option("--q", bin.q, "Taming exponent q")->required();
  bound_cmd->add_option("--gamma", bin.gamma, "gamma")->required();
  bound_cmd->add_option("--T", bin.T, "Horizon")->required();
  bound_cmd->add_option("--mesh", bin.mesh, "Partition mesh")->required();
  bound_cmd->add_option("--alpha", alpha, "alpha (default: window midpoint)");
  bound_cmd->add_flag("--header", header, "Print the column header first");

  // consistency
  auto* cons_cmd = app.add_subcommand("consistency", "Consistency defects of a one-step map");
  std::string cons_model = "cubic1d";
  std::string cons_scheme = "sit";
  std::string control = "scheme";
  double cons_q = 2.0;
  std::size_t cons_points = 17;
  double lo = -2.0;
  double hi = 2.0;
  std::string cons_m = "100000";
  std::uint64_t cons_seed = 1;
  int t_first = 2;
  int t_last = 10;
  cons_cmd->add_option("--model", cons_model, "Zoo model");
  cons_cmd->add_option("--scheme", cons_scheme, "Scheme kind");
  cons_cmd->add_option("--q", cons_q, "Taming exponent");
  cons_cmd->add_option("--control", control, "scheme, euler or zero")
      ->check(CLI::IsMember({"scheme", "euler", "zero"}));
  cons_cmd->add_option("--points", cons_points, "Number of points in K")->check(CLI::PositiveNumber);
  cons_cmd->add_option("--lo", lo, "Lower corner of K");
  cons_cmd->add_option("--hi", hi, "Upper corner of K");
  cons_cmd->add_option("--M", cons_m, "Samples per point");
  cons_cmd->add_option("--seed", cons_seed, "Seed");
  cons_cmd->add_option("--from", t_first, "First t = 2^-from")->check(CLI::NonNegativeNumber);
  cons_cmd->add_option("--to", t_last, "Last t = 2^-to")->check(CLI::NonNegativeNumber);
  cons_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  // residual
  auto* res_cmd = app.add_subcommand("residual", "Lyapunov residual sweep over zoo models");
  std::string res_model;
  std::size_t res_points = 10000;
  res_cmd->add_option("--model", res_model, "Single model (default: all)");
  res_cmd->add_option("--points", res_points, "Quasi-random points per model")->check(CLI::PositiveNumber);

  // probe
  auto* probe_cmd = app.add_subcommand("probe", "Running estimates of E[exp(p ||Y_t||^q)]");
  std::string probe_model = "cubic1d";
  std::string probe_scheme = "euler";
  std::string probe_stop = "whole_space";
  double probe_q = 2.0;
  TailProbeSpec probe;
  probe.p = 0.1;
  probe.q_exp = 2.5;
  std::optional<double> probe_t;
  std::string schedule = "1000,10000,100000";
  std::uint64_t probe_seed = 1;
  probe_cmd->add_option("--model", probe_model, "Zoo model");
  probe_cmd->add_option("--scheme", probe_scheme, "Scheme kind");
  probe_cmd->add_option("--q", probe_q, "Taming exponent");
  probe_cmd->add_option("--stop", probe_stop, "whole_space, norm_level or domain_and_norm_level");
  probe_cmd->add_option("--p", probe.p, "Coefficient p");
  probe_cmd->add_option("--q-exp", probe.q_exp, "Exponent of the functional");
  probe_cmd->add_option("--N", probe.n_steps, "Time steps (power of two)");
  probe_cmd->add_option("--T", probe.horizon, "Horizon");
  probe_cmd->add_option("--t", probe_t, "Probe time (default T)");
  probe_cmd->add_option("--schedule", schedule, "Comma list of increasing sample counts");
  probe_cmd->add_option("--seed", probe_seed, "Seed");
  probe_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  app.add_subcommand("zoo", "List the built-in models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (run_cmd->parsed()) {
      if (list_canned) {
        for (const auto& n : canned_experiment_names()) std::cout << n << '\n';
        return 0;
      }
      if (config_path.empty() == canned.empty()) {
        throw ConfigError("give either a config file or --experiment");
      }
      Experiment e = canned.empty() ? experiment_from_config(Config::load(config_path))
                                    : canned_experiment(canned);
      if (!out_override.empty()) e.out_dir = out_override;
      if (!m_override.empty()) e.samples = parse_count(m_override, "M");
      if (seed_override) e.seed = *seed_override;
      const ExperimentResult res = run(e, workers);
      if (e.out_dir.empty()) {
        for (const auto& t : res.tables) std::cout << "# " << t.file_name << '\n' << t.csv;
      } else {
        for (const auto& t : res.tables) std::cout << "wrote " << e.out_dir << '/' << t.file_name << '\n';
      }
      print_outcomes(res);
      return res.pass() ? 0 : kAssertionFailure;
    }
    if (classify_cmd->parsed()) {
      const auto v = classify_exp_moment(parse_scheme_kind(scheme_name), p_val, q_exp);
      std::cout << to_string(v.verdict);
      if (show_basis) std::cout << ',' << v.basis;
      std::cout << '\n';
      return 0;
    }
    if (bound_cmd->parsed()) {
      bin.alpha = alpha;
      const PrefactorLog pf = theorem_prefactor_log(bin);
      if (header) std::cout << "log_F,log_log_F,log3,e1,e2,alpha\n";
      std::cout << format_real(pf.log_F()) << ',' << format_real(pf.log_log_F()) << ','
                << format_real(pf.log3()) << ',' << format_real(pf.e1) << ',' << format_real(pf.e2)
                << ',' << format_real(pf.alpha) << '\n';
      return 0;
    }
    if (cons_cmd->parsed()) {
      const ModelCard card = model_by_name(cons_model);
      SchemeSpec spec;
      spec.kind = parse_scheme_kind(cons_scheme);
      spec.q = cons_q;
      spec.validate();
      const SdeProblem prob = card.problem;
      OneStepMap phi = scheme_map(spec, prob);
      if (control == "euler") {
        phi = [prob](const State& x, double t, const Noise& y) -> State {
          return prob.mu(x) * t + prob.sigma(x) * y;
        };
      } else if (control == "zero") {
        phi = [d = prob.d](const State&, double, const Noise&) -> State { return State::Zero(d); };
      }
      if (t_last <= t_first) throw ConfigError("--to must exceed --from");
      std::vector<double> ts;
      for (int k = t_first; k <= t_last; ++k) ts.push_back(std::ldexp(1.0, -k));
      const auto pts = consistency_points(card, cons_points, lo, hi);
      const auto rep = consistency_defect(phi, prob, pts, ts, parse_count(cons_m, "M"), cons_seed, workers);
      std::cout << "t,a,b\n";
      for (const auto& d : rep.points) {
        std::cout << format_real(d.t) << ',' << format_real(d.a) << ',' << format_real(d.b) << '\n';
      }
      std::cout << (rep.pass ? "PASS" : "FAIL") << " both defects fall below a quarter of their first value\n";
      return rep.pass ? 0 : kAssertionFailure;
    }
    if (res_cmd->parsed()) {
      std::vector<ModelCard> cards;
      if (res_model.empty()) cards = model_zoo();
      else cards.push_back(model_by_name(res_model));
      bool all = true;
      std::cout << "model,max_scaled_residual,max_abs_scaled_residual,pass\n";
      for (const auto& card : cards) {
        const double tol = card.residual_is_identity ? 1e-10 : 1e-9;
        const auto sweep = residual_sweep(card, res_points, tol);
        const bool ok = sweep.pass && (!card.residual_is_identity || sweep.max_abs_scaled_residual <= tol);
        all = all && ok;
        std::cout << card.name << ',' << format_real(sweep.max_scaled_residual) << ','
                  << format_real(sweep.max_abs_scaled_residual) << ',' << (ok ? 1 : 0) << '\n';
      }
      return all ? 0 : kAssertionFailure;
    }
    if (probe_cmd->parsed()) {
      const ModelCard card = model_by_name(probe_model);
      SchemeSpec spec;
      spec.kind = parse_scheme_kind(probe_scheme);
      spec.q = probe_q;
      spec.stop = stop_from_name(probe_stop);
      spec.validate();
      probe.t = probe_t.value_or(probe.horizon);
      for (const auto& s : split_list(schedule)) probe.schedule.push_back(parse_count(s, "schedule"));
      const auto pts = tail_growth_probe(spec, card.problem, card.x0, probe, probe_seed, workers);
      std::vector<McEstimate> rows;
      for (const auto& pt : pts) rows.push_back(pt.estimate);
      std::cout << render_csv(rows);
      return 0;
    }
    for (const auto& name : model_names()) std::cout << name << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
