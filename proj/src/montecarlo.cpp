#include "emsde/montecarlo.hpp"

#include "emsde/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

namespace emsde {

namespace {

constexpr double kLogMax = 709.782712893384;  // ln(DBL_MAX)
// squares of exp(a) stay finite below this, so the linear variance cannot overflow
constexpr double kLogDomainThreshold = 350.0;

// Grid state of a uniform N-step scheme path at fine master index k.
State state_at_index(const SchemeSpec& scheme, const SdeProblem& prob, const SchemePath& path,
                     const Partition& part, const MasterPath& master, std::size_t k) {
  const std::size_t block = master.fine_steps() / part.intervals();
  const std::size_t n = k / block;
  const std::size_t offset = k % block;
  if (offset == 0) return path.states[n];
  const double t = master.horizon() * static_cast<double>(k) / static_cast<double>(master.fine_steps());
  return step(scheme, prob, path.states[n], t - part.time(n), part.mesh(),
              master.range_sum(n * block, k));
}

void check_refines(const MasterPath& master, std::size_t n_steps) {
  if (n_steps == 0 || !std::has_single_bit(n_steps) || n_steps > master.fine_steps()) {
    throw InvalidArgument("N = " + std::to_string(n_steps) + " does not divide 2^L = " +
                          std::to_string(master.fine_steps()));
  }
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

McEstimate summarize_linear(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("no samples");
  const auto n = static_cast<double>(values.size());
  McEstimate out;
  out.n_samples = values.size();
  out.mean = pairwise_sum(values) / n;
  // shifted by the first value, so identical samples give exactly zero variance
  std::vector<double> dev(values.size());
  std::vector<double> dev_sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    dev[i] = values[i] - values[0];
    dev_sq[i] = dev[i] * dev[i];
  }
  const double sd = pairwise_sum(dev);
  const double var =
      values.size() > 1 ? std::max(0.0, (pairwise_sum(dev_sq) - sd * sd / n) / (n - 1.0)) : 0.0;
  out.std_error = std::sqrt(var / n);
  out.log_mean = std::log(out.mean);
  out.rel_error = out.std_error == 0.0 ? 0.0 : out.std_error / out.mean;
  return out;
}

McEstimate summarize_log(std::span<const double> log_values) {
  if (log_values.empty()) throw InvalidArgument("no samples");
  McEstimate out;
  out.n_samples = log_values.size();
  double amax = -std::numeric_limits<double>::infinity();
  for (double a : log_values) {
    if (a > kLogMax) ++out.overflow_count;
    amax = std::max(amax, a);
  }
  out.usable = out.overflow_count < out.n_samples;
  if (!std::isfinite(amax)) {
    // all terms zero, or some path infinite
    out.log_mean = amax;
    out.mean = std::exp(amax);
    out.log_domain = amax > 0.0;
    out.std_error = out.rel_error = amax > 0.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    return out;
  }
  out.log_domain = amax > kLogDomainThreshold;
  const auto n = static_cast<double>(log_values.size());
  if (!out.log_domain) {
    std::vector<double> lin(log_values.size());
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = std::exp(log_values[i]);
    McEstimate lin_est = summarize_linear(lin);
    lin_est.overflow_count = out.overflow_count;
    lin_est.usable = out.usable;
    return lin_est;
  }
  std::vector<double> s1(log_values.size());
  std::vector<double> s2(log_values.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    s1[i] = std::exp(log_values[i] - amax);
    s2[i] = s1[i] * s1[i];
  }
  const double sum1 = pairwise_sum(s1);
  const double sum2 = pairwise_sum(s2);
  out.log_mean = amax + std::log(sum1 / n);
  out.rel_error = n > 1.0 ? std::sqrt(std::max(0.0, sum2 * n / (sum1 * sum1) - 1.0) / (n - 1.0)) : 0.0;
  out.mean = std::exp(out.log_mean);
  out.std_error = out.rel_error == 0.0 ? 0.0 : out.rel_error * out.mean;
  return out;
}

int default_workers() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
  const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1,
                                                std::max<std::size_t>(count, 1));
  if (w == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t k = 0; k < w; ++k) {
    threads.emplace_back([&, k] {
      const std::size_t lo = count * k / w;
      const std::size_t hi = count * (k + 1) / w;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> default_t_query(double horizon, int count) {
  if (count < 2) throw InvalidArgument("need at least two query times");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = horizon * i / (count - 1);
  return out;
}

std::vector<double> functional_log_exponents(const SchemeSpec& scheme, const SdeProblem& prob,
                                             const Partition& part, const MasterPath& master,
                                             const State& x0, const FunctionalSpec& fspec,
                                             double* tau_out) {
  const std::size_t n_steps = part.intervals();
  check_refines(master, n_steps);
  if (!part.is_uniform()) throw InvalidArgument("functional requires a uniform partition");
  const auto substeps = static_cast<std::size_t>(fspec.substeps);
  const std::size_t block = master.fine_steps() / n_steps;
  if (fspec.substeps < 1 || !std::has_single_bit(substeps) || substeps > block) {
    throw InvalidArgument("master grid too coarse for N * substeps");
  }
  const SchemePath path = simulate(scheme, prob, part, x0, coarsen(master, n_steps));
  if (tau_out) *tau_out = path.tau;

  const LyapunovPair& pair = fspec.pair;
  const double horizon = part.horizon();
  const std::size_t fine_per_sub = block / substeps;
  const std::size_t cells = n_steps * substeps;
  const double width = horizon / static_cast<double>(cells);
  auto cell_time = [&](std::size_t j) {
    return horizon * static_cast<double>(j) / static_cast<double>(cells);
  };
  std::size_t cached_j = cells;
  double cached_g = 0.0;
  auto integrand = [&](std::size_t j) {
    if (j != cached_j) {
      const State y = state_at_index(scheme, prob, path, part, master, j * fine_per_sub);
      const double s = cell_time(j);
      cached_g = pair.U_bar(y) * std::exp(-pair.rho * s);
      cached_j = j;
    }
    return cached_g;
  };

  std::vector<double> out;
  out.reserve(fspec.t_query.size());
  std::size_t j = 0;
  double cum = 0.0;
  double prev_t = -1.0;
  for (double t : fspec.t_query) {
    if (t < prev_t) throw InvalidArgument("query times must be sorted");
    prev_t = t;
    const std::size_t k = master.index_of(t);
    const double limit = std::min(t, path.tau);
    while (j < cells && cell_time(j + 1) <= limit) {
      cum += integrand(j) * width;
      ++j;
    }
    double partial = 0.0;
    if (j < cells && cell_time(j) < limit) partial = integrand(j) * (limit - cell_time(j));
    const State y = state_at_index(scheme, prob, path, part, master, k);
    out.push_back(pair.U(y) * std::exp(-pair.rho * t) + cum + partial);
  }
  return out;
}

double exp_moment_log_functional(const SchemeSpec& scheme, const SdeProblem& prob,
                                 const Partition& part, const MasterPath& master, const State& x0,
                                 const FunctionalSpec& fspec, double t) {
  FunctionalSpec single = fspec;
  single.t_query = {t};
  return functional_log_exponents(scheme, prob, part, master, x0, single).front();
}

std::vector<std::vector<McEstimate>> estimate_exp_moment(const SchemeSpec& scheme,
                                                         const SdeProblem& prob,
                                                         std::span<const std::size_t> n_list,
                                                         double horizon, const State& x0,
                                                         const FunctionalSpec& fspec,
                                                         const McConfig& mc) {
  if (mc.samples < 2) throw InvalidArgument("M must be at least 2");
  scheme.validate();
  std::vector<Partition> parts;
  for (std::size_t n : n_list) parts.push_back(Partition::uniform(n, horizon));
  const std::size_t nt = fspec.t_query.size();
  const std::size_t m = mc.samples;
  // [n][t][path]
  std::vector<std::vector<std::vector<double>>> logs(
      n_list.size(), std::vector<std::vector<double>>(nt, std::vector<double>(m)));
  std::vector<std::vector<char>> stopped(n_list.size(), std::vector<char>(m));

  parallel_for(m, mc.workers, [&](std::size_t i) {
    const MasterPath master = generate(mc.seed, i, mc.levels, horizon, prob.m);
    for (std::size_t a = 0; a < parts.size(); ++a) {
      double tau = horizon;
      const auto v = functional_log_exponents(scheme, prob, parts[a], master, x0, fspec, &tau);
      for (std::size_t b = 0; b < nt; ++b) logs[a][b][i] = v[b];
      stopped[a][i] = tau < horizon;
    }
  });

  std::vector<std::vector<McEstimate>> out(n_list.size());
  for (std::size_t a = 0; a < n_list.size(); ++a) {
    const auto early = static_cast<std::size_t>(std::count(stopped[a].begin(), stopped[a].end(), 1));
    for (std::size_t b = 0; b < nt; ++b) {
      McEstimate e = summarize_log(logs[a][b]);
      e.t = fspec.t_query[b];
      e.tau_lt_T_count = early;
      out[a].push_back(e);
    }
  }
  return out;
}

std::vector<std::vector<McEstimate>> strong_error(const SchemeSpec& scheme,
                                                  const SchemeSpec& reference,
                                                  const SdeProblem& prob,
                                                  std::span<const std::size_t> n_list,
                                                  double horizon, const State& x0, double r,
                                                  std::span<const double> t_query,
                                                  const McConfig& mc) {
  if (mc.samples < 2) throw InvalidArgument("M must be at least 2");
  if (mc.levels < 0 || mc.levels > kMaxLevels) throw ResourceError("reference level too large");
  const std::size_t n_ref = std::size_t{1} << mc.levels;
  for (std::size_t n : n_list) {
    if (n == 0 || !std::has_single_bit(n) || n > n_ref) {
      throw InvalidArgument("N = " + std::to_string(n) + " does not divide N_ref = " +
                            std::to_string(n_ref));
    }
  }
  std::vector<Partition> parts;
  for (std::size_t n : n_list) parts.push_back(Partition::uniform(n, horizon));
  const Partition ref_part = Partition::uniform(n_ref, horizon);
  const std::size_t nt = t_query.size();
  const std::size_t m = mc.samples;
  std::vector<std::vector<std::vector<double>>> errs(
      n_list.size(), std::vector<std::vector<double>>(nt, std::vector<double>(m)));
  std::vector<std::vector<char>> stopped(n_list.size(), std::vector<char>(m));

  parallel_for(m, mc.workers, [&](std::size_t i) {
    const MasterPath master = generate(mc.seed, i, mc.levels, horizon, prob.m);
    const SchemePath ref = simulate(reference, prob, ref_part, x0, coarsen(master, n_ref));
    for (std::size_t a = 0; a < parts.size(); ++a) {
      const SchemePath path = simulate(scheme, prob, parts[a], x0, coarsen(master, n_list[a]));
      stopped[a][i] = path.tau < horizon;
      for (std::size_t b = 0; b < nt; ++b) {
        const std::size_t k = master.index_of(t_query[b]);
        const State y = state_at_index(scheme, prob, path, parts[a], master, k);
        errs[a][b][i] = std::pow((ref.states[k] - y).norm(), r);
      }
    }
  });

  std::vector<std::vector<McEstimate>> out(n_list.size());
  for (std::size_t a = 0; a < n_list.size(); ++a) {
    const auto early = static_cast<std::size_t>(std::count(stopped[a].begin(), stopped[a].end(), 1));
    for (std::size_t b = 0; b < nt; ++b) {
      McEstimate e = summarize_linear(errs[a][b]);
      e.t = t_query[b];
      e.tau_lt_T_count = early;
      out[a].push_back(e);
    }
  }
  return out;
}

OneStepMap scheme_map(const SchemeSpec& spec, const SdeProblem& prob) {
  return [spec, prob](const State& x, double t, const Noise& y) -> State {
    if (!spec.stop.contains(prob, x, t)) return State::Zero(prob.d);
    return raw_increment(spec, prob, x, t, y);
  };
}

ConsistencyReport consistency_defect(const OneStepMap& phi, const SdeProblem& prob,
                                     std::span<const State> points, std::span<const double> t_seq,
                                     std::size_t samples, std::uint64_t seed, int workers) {
  if (points.empty() || t_seq.empty()) throw InvalidArgument("empty point set or time sequence");
  if (samples < 1) throw InvalidArgument("need at least one sample");
  std::vector<Noise> z(samples, Noise(prob.m));
  for (std::size_t i = 0; i < samples; ++i) {
    CounterNormal(seed, i).fill(0, z[i].data(), static_cast<std::size_t>(prob.m));
  }

  const std::size_t np = points.size();
  std::vector<double> a_val(t_seq.size() * np);
  std::vector<double> b_val(t_seq.size() * np);
  parallel_for(t_seq.size() * np, workers, [&](std::size_t task) {
    const double t = t_seq[task / np];
    const State& x = points[task % np];
    const State mu = prob.mu(x);
    const Diffusion sigma = prob.sigma(x);
    const double root = std::sqrt(t);
    double a_sum = 0.0;
    State r_sum = State::Zero(prob.d);
    for (std::size_t i = 0; i < samples; ++i) {
      const Noise y = root * z[i];
      const State sy = sigma * y;
      const State f = phi(x, t, y);
      a_sum += (sy - f).norm();
      r_sum += (mu * t + sy) - f;
    }
    const auto n = static_cast<double>(samples);
    a_val[task] = a_sum / n / root;
    b_val[task] = (r_sum / n).norm() / t;
  });

  ConsistencyReport rep;
  for (std::size_t k = 0; k < t_seq.size(); ++k) {
    DefectPoint d;
    d.t = t_seq[k];
    for (std::size_t j = 0; j < np; ++j) {
      d.a = std::max(d.a, a_val[k * np + j]);
      d.b = std::max(d.b, b_val[k * np + j]);
    }
    rep.points.push_back(d);
  }
  rep.a_decreases = rep.points.back().a <= rep.points.front().a / 4.0;
  rep.b_decreases = rep.points.back().b <= rep.points.front().b / 4.0;
  rep.pass = rep.a_decreases && rep.b_decreases;
  return rep;
}

std::vector<TailProbePoint> tail_growth_probe(const SchemeSpec& scheme, const SdeProblem& prob,
                                              const State& x0, const TailProbeSpec& spec,
                                              std::uint64_t seed, int workers) {
  if (!(spec.p > 0.0) || !(spec.q_exp > 0.0)) throw InvalidArgument("p and q must be positive");
  if (spec.schedule.empty()) throw InvalidArgument("empty sample schedule");
  if (!std::is_sorted(spec.schedule.begin(), spec.schedule.end()) || spec.schedule.front() < 1) {
    throw InvalidArgument("sample schedule must be increasing");
  }
  const std::size_t n_steps = spec.n_steps;
  if (n_steps == 0 || !std::has_single_bit(n_steps)) throw InvalidArgument("N must be a power of two");
  const int levels = std::countr_zero(n_steps);
  const Partition part = Partition::uniform(n_steps, spec.horizon);
  const std::size_t total = spec.schedule.back();
  std::vector<double> logs(total);
  parallel_for(total, workers, [&](std::size_t i) {
    const MasterPath master = generate(seed, i, levels, spec.horizon, prob.m);
    const SchemePath path = simulate(scheme, prob, part, x0, coarsen(master, n_steps));
    const State y = state_at_index(scheme, prob, path, part, master, master.index_of(spec.t));
    logs[i] = spec.p * std::pow(y.norm(), spec.q_exp);
  });

  std::vector<TailProbePoint> out;
  double running_max = -std::numeric_limits<double>::infinity();
  std::size_t seen = 0;
  for (std::size_t mk : spec.schedule) {
    for (; seen < mk; ++seen) running_max = std::max(running_max, logs[seen]);
    TailProbePoint pt;
    pt.samples = mk;
    pt.estimate = summarize_log(std::span<const double>(logs).first(mk));
    pt.estimate.t = spec.t;
    pt.max_log = running_max;
    out.push_back(pt);
  }
  return out;
}

double tail_growth_ratio(std::span<const TailProbePoint> probe) {
  if (probe.empty()) return 1.0;
  return std::exp(probe.back().max_log - probe.front().max_log);
}

double tail_relative_drift(std::span<const TailProbePoint> probe) {
  if (probe.size() < 2) return 0.0;
  const auto& last = probe[probe.size() - 1].estimate;
  const auto& prev = probe[probe.size() - 2].estimate;
  return std::abs(std::expm1(last.log_mean - prev.log_mean));
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(std::span<const McEstimate> rows) {
  std::string out = "t,estimate,std_error,n,overflow_count,tau_lt_T_count,log_domain\n";
  for (const auto& e : rows) {
    out += format_real(e.t);
    out += ',';
    out += format_real(e.log_domain ? e.log_mean : e.mean);
    out += ',';
    out += format_real(e.log_domain ? e.rel_error : e.std_error);
    out += ',' + std::to_string(e.n_samples) + ',' + std::to_string(e.overflow_count) + ',' +
           std::to_string(e.tau_lt_T_count) + ',' + (e.log_domain ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace emsde
