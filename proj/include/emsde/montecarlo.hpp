#pragma once

#include "emsde/lyapunov.hpp"
#include "emsde/paths.hpp"
#include "emsde/schemes.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace emsde {

/// Summary of one Monte Carlo estimate at one query time.
///
/// `mean` and `std_error` are in linear scale (possibly inf). `log_mean` and
/// `rel_error` = std_error / mean stay finite when the linear values do not.
/// `log_domain` is set when some per-path exponent exceeded 350 and the sums
/// were formed by log-sum-exp.
struct McEstimate {
  double t = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  double log_mean = 0.0;
  double rel_error = 0.0;
  std::size_t n_samples = 0;
  std::size_t overflow_count = 0;
  std::size_t tau_lt_T_count = 0;
  bool log_domain = false;
  /// False when every path overflowed.
  bool usable = true;
};

/// Plain mean and standard error of finite values.
McEstimate summarize_linear(std::span<const double> values);
/// Mean of exp(a_i) from the exponents a_i, via log-sum-exp when needed.
McEstimate summarize_log(std::span<const double> log_values);

/// Pairwise (tree) sum; the association order depends only on the length.
double pairwise_sum(std::span<const double> v);

/// Runs body(i) for i in [0, count) on `workers` threads in contiguous chunks.
/// The first exception thrown (lowest chunk) is rethrown after all workers join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

/// Default worker count: hardware concurrency, at least 1.
int default_workers();

struct FunctionalSpec {
  LyapunovPair pair;
  /// Sorted query times in [0, T], each on the master grid.
  std::vector<double> t_query;
  /// Quadrature points per coarse interval (power of two).
  int substeps = 4;
};

/// `count` equispaced times 0, T/(count-1), ..., T.
std::vector<double> default_t_query(double horizon, int count = 9);

/// Log of exp(U(Y_t) e^{-rho t} + int_0^{t ^ tau} Ubar(Y_s) e^{-rho s} ds) for each
/// t in fspec.t_query, along one master path. The integral is the composite
/// left-endpoint rule on the substep grid with the scheme's own interpolation.
/// `tau_out` receives the stopping time when non-null.
std::vector<double> functional_log_exponents(const SchemeSpec& scheme, const SdeProblem& prob,
                                             const Partition& part, const MasterPath& master,
                                             const State& x0, const FunctionalSpec& fspec,
                                             double* tau_out = nullptr);

/// Single-t convenience form; returns the log value.
double exp_moment_log_functional(const SchemeSpec& scheme, const SdeProblem& prob,
                                 const Partition& part, const MasterPath& master, const State& x0,
                                 const FunctionalSpec& fspec, double t);

struct McConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  /// Master grid has 2^levels intervals.
  int levels = 12;
  int workers = 1;
};

/// E[functional] at each query time, for each N in `n_list`, all N sharing the
/// same master paths. Result indexed [n][t].
std::vector<std::vector<McEstimate>> estimate_exp_moment(const SchemeSpec& scheme,
                                                         const SdeProblem& prob,
                                                         std::span<const std::size_t> n_list,
                                                         double horizon, const State& x0,
                                                         const FunctionalSpec& fspec,
                                                         const McConfig& mc);

/// E||Y^ref_t - Y^N_t||^r at each t, with the reference scheme at N_ref = 2^levels
/// driven by the same master path. Throws InvalidArgument when N does not divide N_ref.
/// Result indexed [n][t].
std::vector<std::vector<McEstimate>> strong_error(const SchemeSpec& scheme,
                                                  const SchemeSpec& reference,
                                                  const SdeProblem& prob,
                                                  std::span<const std::size_t> n_list,
                                                  double horizon, const State& x0, double r,
                                                  std::span<const double> t_query,
                                                  const McConfig& mc);

/// phi(x, t, y): a one-step map evaluated at elapsed time t and increment y.
using OneStepMap = std::function<State(const State&, double, const Noise&)>;

/// The scheme's map inside D_h (stopping indicator ignored).
OneStepMap scheme_map(const SchemeSpec& spec, const SdeProblem& prob);

struct DefectPoint {
  double t = 0.0;
  /// sup_K E||sigma(x) W_t - phi(x,t,W_t)|| / sqrt(t)
  double a = 0.0;
  /// sup_K ||mu(x) - E[phi(x,t,W_t)] / t||
  double b = 0.0;
};

struct ConsistencyReport {
  std::vector<DefectPoint> points;
  bool a_decreases = false;
  bool b_decreases = false;
  /// Both defects fall below a quarter of their first value by the last t.
  bool pass = false;
};

/// Monte Carlo consistency defects with common random numbers W_t = sqrt(t) Z_i
/// across all x and t. The drift defect is formed from per-sample residuals
/// (mu t + sigma W_t) - phi so that maps reproducing the Euler increment give 0.
ConsistencyReport consistency_defect(const OneStepMap& phi, const SdeProblem& prob,
                                     std::span<const State> points, std::span<const double> t_seq,
                                     std::size_t samples, std::uint64_t seed, int workers = 1);

struct TailProbePoint {
  std::size_t samples = 0;
  McEstimate estimate;
  /// Largest per-path exponent p ||Y_t||^q seen so far.
  double max_log = 0.0;
};

struct TailProbeSpec {
  double p = 1.0;
  double q_exp = 2.0;
  std::size_t n_steps = 4;
  double horizon = 1.0;
  double t = 1.0;
  /// Increasing sample counts.
  std::vector<std::size_t> schedule;
};

/// Running estimates of E[exp(p ||Y_t^N||^q)] along the sample schedule.
std::vector<TailProbePoint> tail_growth_probe(const SchemeSpec& scheme, const SdeProblem& prob,
                                              const State& x0, const TailProbeSpec& spec,
                                              std::uint64_t seed, int workers = 1);

/// Ratio of the last to the first running maximum of exp(p ||Y_t||^q), computed
/// in log space. Unlike the running mean it does not hinge on when the largest
/// sample happens to arrive.
double tail_growth_ratio(std::span<const TailProbePoint> probe);
/// |last / previous - 1| for the final two schedule entries.
double tail_relative_drift(std::span<const TailProbePoint> probe);

/// CSV with header t,estimate,std_error,n,overflow_count,tau_lt_T_count,log_domain.
/// In log-domain rows the estimate column holds log_mean and std_error the
/// relative error. Reals use 17 significant digits.
std::string render_csv(std::span<const McEstimate> rows);
std::string format_real(double v);

}  // namespace emsde
