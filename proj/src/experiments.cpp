#include "emsde/experiments.hpp"

#include "emsde/analysis.hpp"
#include "emsde/lyapunov.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace emsde {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::ExpMoment: return "exp_moment";
    case ExperimentKind::StrongError: return "strong_error";
    case ExperimentKind::TailProbe: return "tail_probe";
    case ExperimentKind::Residuals: return "residuals";
  }
  return "exp_moment";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "exp_moment") return ExperimentKind::ExpMoment;
  if (name == "strong_error") return ExperimentKind::StrongError;
  if (name == "tail_probe") return ExperimentKind::TailProbe;
  if (name == "residuals") return ExperimentKind::Residuals;
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

AssertionSpec parse_assertion(std::string_view token) {
  const auto colon = token.find(':');
  const std::string_view head = token.substr(0, colon);
  const bool has_value = colon != std::string_view::npos;
  auto value = [&] {
    if (!has_value) throw ConfigError("assertion '" + std::string(token) + "' needs a threshold");
    return parse_real(token.substr(colon + 1), "expect");
  };
  if (head == "below_prefactor") return {AssertionKind::BelowPrefactor, 0.0};
  if (head == "finest_log_below") return {AssertionKind::FinestLogBelow, value()};
  if (head == "error_drop") return {AssertionKind::ErrorDrop, value()};
  if (head == "error_monotone") return {AssertionKind::ErrorMonotone, 0.0};
  if (head == "tail_growth") return {AssertionKind::TailGrowth, value()};
  if (head == "tail_drift") return {AssertionKind::TailDrift, value()};
  if (head == "residuals_pass") return {AssertionKind::ResidualsPass, 0.0};
  throw ConfigError("unknown assertion '" + std::string(token) + "'");
}

std::string describe(const AssertionSpec& a) {
  switch (a.kind) {
    case AssertionKind::BelowPrefactor: return "log estimate <= U(x0) + log F(T/N) + 3 rel. err";
    case AssertionKind::FinestLogBelow:
      return "max_t log estimate at finest N <= U(x0) + " + format_real(a.threshold);
    case AssertionKind::ErrorDrop:
      return "sup_t error drops by >= " + format_real(a.threshold) + "x over N";
    case AssertionKind::ErrorMonotone: return "sup_t error non-increasing in N (2 s.e. slack)";
    case AssertionKind::TailGrowth:
      return "running maximum grows >= " + format_real(a.threshold) + "x";
    case AssertionKind::TailDrift:
      return "relative drift over last step < " + format_real(a.threshold);
    case AssertionKind::ResidualsPass: return "all zoo residual sweeps pass";
  }
  return "";
}

bool ExperimentResult::pass() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.pass; });
}

void Experiment::validate() const {
  if (levels < 0 || levels > kMaxLevels) throw ConfigError("L must be in [0, 24]");
  if (!(horizon > 0.0)) throw ConfigError("T must be positive");
  if (kind == ExperimentKind::Residuals) {
    if (residual_points < 1) throw ConfigError("points must be positive");
    return;
  }
  if (n_list.empty()) throw ConfigError("N list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const std::size_t n = n_list[i];
    if (n == 0 || !std::has_single_bit(n)) throw ConfigError("N must be powers of two");
    if (i > 0 && n <= n_list[i - 1]) throw ConfigError("N list must be strictly increasing");
  }
  const std::size_t fine = std::size_t{1} << levels;
  if (kind == ExperimentKind::ExpMoment &&
      n_list.back() * static_cast<std::size_t>(std::max(substeps, 1)) > fine) {
    throw ConfigError("2^L must be at least N * substeps");
  }
  if (kind == ExperimentKind::StrongError && n_list.back() > fine) {
    throw ConfigError("N must divide the reference 2^L");
  }
  if (kind == ExperimentKind::TailProbe) {
    if (n_list.size() != 1) throw ConfigError("tail probe takes a single N");
    if (schedule.empty() || !std::is_sorted(schedule.begin(), schedule.end()) ||
        std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end()) {
      throw ConfigError("schedule must be strictly increasing");
    }
  } else if (samples < 2) {
    throw ConfigError("M must be at least 2");
  }
  if (substeps < 1 || !std::has_single_bit(static_cast<unsigned>(substeps))) {
    throw ConfigError("substeps must be a power of two");
  }
  try {
    scheme.validate();
  } catch (const InvalidArgument& err) {
    throw ConfigError(err.what());
  }
}

namespace {

double sup_error(const std::vector<McEstimate>& rows, double* se = nullptr) {
  double best = 0.0;
  double best_se = 0.0;
  for (const auto& r : rows) {
    if (r.mean > best) {
      best = r.mean;
      best_se = r.std_error;
    }
  }
  if (se) *se = best_se;
  return best;
}

AssertionOutcome check_moment(const AssertionSpec& a, const Experiment& e, const ModelCard& card,
                              const LyapunovPair& pair, double u0,
                              const std::vector<std::vector<McEstimate>>& est) {
  AssertionOutcome out{describe(a), true, ""};
  if (a.kind == AssertionKind::BelowPrefactor) {
    double worst_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < est.size(); ++i) {
      BoundInputs in;
      in.rho = pair.rho;
      in.c = card.problem.growth_c;
      in.p = e.bound_p;
      in.q = e.scheme.q;
      in.gamma = card.gamma;
      in.T = e.horizon;
      in.mesh = e.horizon / static_cast<double>(e.n_list[i]);
      const PrefactorLog pf = theorem_prefactor_log(in);
      for (const auto& r : est[i]) {
        const double margin = r.log_mean - (u0 + pf.log_F() + 3.0 * r.rel_error);
        worst_margin = std::max(worst_margin, margin);
        if (!r.usable || !(margin <= 0.0)) out.pass = false;
      }
      if (i + 1 == est.size()) out.detail = "log log F(T/N_max) = " + format_real(pf.log_log_F());
    }
    out.detail += ", worst margin " + format_real(worst_margin);
  } else if (a.kind == AssertionKind::FinestLogBelow) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& r : est.back()) worst = std::max(worst, r.log_mean - u0);
    out.pass = worst <= a.threshold;
    out.detail = "max_t log estimate - U(x0) = " + format_real(worst);
  } else {
    out.pass = false;
    out.detail = "assertion does not apply to exp_moment experiments";
  }
  return out;
}

AssertionOutcome check_error(const AssertionSpec& a, const std::vector<std::vector<McEstimate>>& est) {
  AssertionOutcome out{describe(a), true, ""};
  if (a.kind == AssertionKind::ErrorDrop) {
    const double first = sup_error(est.front());
    const double last = sup_error(est.back());
    const double ratio = first / last;
    out.pass = ratio >= a.threshold;
    out.detail = "ratio " + format_real(ratio);
  } else if (a.kind == AssertionKind::ErrorMonotone) {
    for (std::size_t i = 1; i < est.size(); ++i) {
      double se_prev = 0.0;
      double se_cur = 0.0;
      const double prev = sup_error(est[i - 1], &se_prev);
      const double cur = sup_error(est[i], &se_cur);
      if (cur > prev + 2.0 * (se_prev + se_cur)) out.pass = false;
      out.detail += (i > 1 ? " " : "") + format_real(prev);
    }
    out.detail += " " + format_real(sup_error(est.back()));
  } else {
    out.pass = false;
    out.detail = "assertion does not apply to strong_error experiments";
  }
  return out;
}

AssertionOutcome check_tail(const AssertionSpec& a, const std::vector<TailProbePoint>& probe) {
  AssertionOutcome out{describe(a), true, ""};
  if (a.kind == AssertionKind::TailGrowth) {
    const double g = tail_growth_ratio(probe);
    out.pass = g >= a.threshold;
    const double mean_growth = std::exp(probe.back().estimate.log_mean - probe.front().estimate.log_mean);
    out.detail = "max growth " + format_real(g) + ", mean growth " + format_real(mean_growth);
  } else if (a.kind == AssertionKind::TailDrift) {
    const double d = tail_relative_drift(probe);
    out.pass = d < a.threshold;
    out.detail = "drift " + format_real(d);
  } else {
    out.pass = false;
    out.detail = "assertion does not apply to tail_probe experiments";
  }
  return out;
}

std::string per_n_name(const Experiment& e, std::size_t n) {
  return e.name + "_N" + std::to_string(n) + ".csv";
}

}  // namespace

ExperimentResult run(const Experiment& e, int workers) {
  e.validate();
  ExperimentResult result;

  if (e.kind == ExperimentKind::Residuals) {
    std::string csv = "model,max_scaled_residual,max_abs_scaled_residual,pass\n";
    bool all = true;
    std::string failed;
    for (const auto& card : model_zoo()) {
      const double tol = card.residual_is_identity ? 1e-10 : 1e-9;
      const ResidualSweep sweep = residual_sweep(card, e.residual_points, tol);
      const bool ok = sweep.pass && (!card.residual_is_identity || sweep.max_abs_scaled_residual <= tol);
      all = all && ok;
      if (!ok) failed += " " + card.name;
      csv += card.name + ',' + format_real(sweep.max_scaled_residual) + ',' +
             format_real(sweep.max_abs_scaled_residual) + ',' + (ok ? "1" : "0") + '\n';
    }
    result.tables.push_back({e.name + ".csv", csv});
    for (const auto& a : e.expected) {
      AssertionOutcome o{describe(a), all, all ? "9 models" : "failed:" + failed};
      if (a.kind != AssertionKind::ResidualsPass) {
        o.pass = false;
        o.detail = "assertion does not apply to residual experiments";
      }
      result.outcomes.push_back(o);
    }
  } else {
    const ModelCard card = model_by_name(e.model);
    const SdeProblem& prob = card.problem;
    const State x0 = e.x0.value_or(card.x0);
    if (x0.size() != prob.d) throw ConfigError("x0 has the wrong dimension for " + card.name);
    LyapunovPair pair = card.pair;
    if (e.rho) pair.rho = *e.rho;
    const std::vector<double> t_query = e.t_query.empty() ? default_t_query(e.horizon) : e.t_query;
    const McConfig mc{e.samples, e.seed, e.levels, workers};

    if (e.kind == ExperimentKind::ExpMoment) {
      const FunctionalSpec fspec{pair, t_query, e.substeps};
      const auto est = estimate_exp_moment(e.scheme, prob, e.n_list, e.horizon, x0, fspec, mc);
      for (std::size_t i = 0; i < est.size(); ++i) {
        result.tables.push_back({per_n_name(e, e.n_list[i]), render_csv(est[i])});
      }
      const double u0 = pair.U(x0);
      for (const auto& a : e.expected) result.outcomes.push_back(check_moment(a, e, card, pair, u0, est));
    } else if (e.kind == ExperimentKind::StrongError) {
      const SchemeSpec reference;
      const auto est = strong_error(e.scheme, reference, prob, e.n_list, e.horizon, x0, e.r, t_query, mc);
      for (std::size_t i = 0; i < est.size(); ++i) {
        result.tables.push_back({per_n_name(e, e.n_list[i]), render_csv(est[i])});
      }
      for (const auto& a : e.expected) result.outcomes.push_back(check_error(a, est));
    } else {
      TailProbeSpec spec;
      spec.p = e.p;
      spec.q_exp = e.q_exp;
      spec.n_steps = e.n_list.front();
      spec.horizon = e.horizon;
      spec.t = e.probe_t.value_or(e.horizon);
      spec.schedule = e.schedule;
      const auto probe = tail_growth_probe(e.scheme, prob, x0, spec, e.seed, workers);
      std::vector<McEstimate> rows;
      for (const auto& pt : probe) rows.push_back(pt.estimate);
      result.tables.push_back({e.name + ".csv", render_csv(rows)});
      for (const auto& a : e.expected) result.outcomes.push_back(check_tail(a, probe));
    }
  }

  if (!e.out_dir.empty()) {
    std::filesystem::create_directories(e.out_dir);
    for (const auto& t : result.tables) {
      const auto path = std::filesystem::path(e.out_dir) / t.file_name;
      std::ofstream os(path, std::ios::binary);
      os << t.csv;
      if (!os) throw ResourceError("cannot write " + path.string());
    }
  }
  return result;
}

namespace {

StoppingFamily parse_stop(const std::string& s) {
  if (s == "whole_space") return StoppingFamily::whole_space();
  if (s == "norm_level") return StoppingFamily::norm_level();
  if (s == "domain_and_norm_level") return StoppingFamily::domain_and_norm_level();
  throw ConfigError("unknown stopping family '" + s + "'");
}

}  // namespace

Experiment experiment_from_config(const Config& cfg) {
  Experiment e;
  e.name = cfg.text("name", e.name);
  e.kind = parse_experiment_kind(cfg.text("kind", std::string(to_string(e.kind))));
  e.model = cfg.text("model", e.model);
  model_by_name(e.model);
  e.scheme.kind = parse_scheme_kind(cfg.text("scheme", "sit"));
  e.scheme.q = cfg.real("q", e.scheme.q);
  e.scheme.stop = parse_stop(cfg.text("stop", "domain_and_norm_level"));
  std::vector<std::uint64_t> ns(e.n_list.begin(), e.n_list.end());
  ns = cfg.counts("N", ns);
  e.n_list.assign(ns.begin(), ns.end());
  e.samples = cfg.count("M", e.samples);
  e.seed = cfg.count("seed", e.seed);
  e.levels = static_cast<int>(std::min<std::uint64_t>(cfg.count("L", 12), 64));
  e.horizon = cfg.real("T", e.horizon);
  e.t_query = cfg.reals("t_query", {});
  e.substeps = static_cast<int>(std::min<std::uint64_t>(cfg.count("substeps", 4), 1u << 20));
  if (cfg.has("rho")) e.rho = cfg.real("rho", 0.0);
  if (cfg.has("x0")) {
    const auto v = cfg.reals("x0", {});
    if (v.size() > static_cast<std::size_t>(kMaxDim)) throw ConfigError("x0 has too many components");
    State x(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<int>(i)] = v[i];
    e.x0 = x;
  }
  e.p = cfg.real("p", e.p);
  e.q_exp = cfg.real("q_exp", e.q_exp);
  if (cfg.has("t")) e.probe_t = cfg.real("t", 1.0);
  const auto sched = cfg.counts("schedule", {});
  e.schedule.assign(sched.begin(), sched.end());
  e.r = cfg.real("r", e.r);
  e.residual_points = cfg.count("points", e.residual_points);
  e.bound_p = cfg.real("bound_p", e.bound_p);
  e.out_dir = cfg.text("out", "");
  for (const auto& token : cfg.words("expect")) e.expected.push_back(parse_assertion(token));
  if (!cfg.has("expect")) {
    switch (e.kind) {
      case ExperimentKind::ExpMoment: e.expected = {{AssertionKind::BelowPrefactor, 0.0}}; break;
      case ExperimentKind::StrongError: e.expected = {{AssertionKind::ErrorMonotone, 0.0}}; break;
      case ExperimentKind::TailProbe: break;
      case ExperimentKind::Residuals: e.expected = {{AssertionKind::ResidualsPass, 0.0}}; break;
    }
  }
  e.validate();
  return e;
}

std::vector<std::string> canned_experiment_names() {
  return {"cubic_preserved", "cubic_strong_error", "euler_diverges", "sit_stabilizes",
          "all_zoo_residuals"};
}

Experiment canned_experiment(const std::string& name) {
  Experiment e;
  e.name = name;
  if (name == "cubic_preserved") {
    e.expected = {{AssertionKind::BelowPrefactor, 0.0}, {AssertionKind::FinestLogBelow, 0.05}};
  } else if (name == "cubic_strong_error") {
    e.kind = ExperimentKind::StrongError;
    e.samples = 10000;
    e.levels = 14;
    e.expected = {{AssertionKind::ErrorDrop, 8.0}, {AssertionKind::ErrorMonotone, 0.0}};
  } else if (name == "euler_diverges") {
    e.kind = ExperimentKind::TailProbe;
    e.scheme.kind = SchemeKind::EulerStopped;
    e.scheme.stop = StoppingFamily::whole_space();
    e.n_list = {4};
    e.p = 0.1;
    e.q_exp = 2.5;
    e.schedule = {1000, 10000, 100000, 500000, 1000000};
    e.expected = {{AssertionKind::TailGrowth, 10.0}};
  } else if (name == "sit_stabilizes") {
    e.kind = ExperimentKind::TailProbe;
    e.n_list = {1024};
    e.p = 0.1;
    e.q_exp = 4.0;
    e.schedule = {1000, 10000, 50000, 100000};
    e.expected = {{AssertionKind::TailDrift, 0.05}};
  } else if (name == "all_zoo_residuals") {
    e.kind = ExperimentKind::Residuals;
    e.expected = {{AssertionKind::ResidualsPass, 0.0}};
  } else {
    throw ConfigError("unknown experiment '" + name + "'");
  }
  return e;
}

}  // namespace emsde
