#pragma once

#include "emsde/config.hpp"
#include "emsde/montecarlo.hpp"
#include "emsde/schemes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace emsde {

enum class ExperimentKind { ExpMoment, StrongError, TailProbe, Residuals };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

enum class AssertionKind {
  /// log estimate <= U(x0) + log F(T/N) + 3 relative errors, every N and t.
  BelowPrefactor,
  /// max_t log estimate at the finest N <= U(x0) + threshold.
  FinestLogBelow,
  /// sup_t error at the coarsest N / sup_t error at the finest N >= threshold.
  ErrorDrop,
  /// sup_t error non-increasing in N up to two standard errors.
  ErrorMonotone,
  /// last / first running maximum >= threshold.
  TailGrowth,
  /// relative change over the last schedule step < threshold.
  TailDrift,
  /// every zoo model passes its residual sweep.
  ResidualsPass,
};

struct AssertionSpec {
  AssertionKind kind;
  double threshold = 0.0;
};

/// Parses `below_prefactor`, `finest_log_below:0.05`, `error_drop:8`,
/// `error_monotone`, `tail_growth:10`, `tail_drift:0.05`, `residuals_pass`.
AssertionSpec parse_assertion(std::string_view token);
std::string describe(const AssertionSpec& a);

struct Experiment {
  std::string name = "experiment";
  ExperimentKind kind = ExperimentKind::ExpMoment;
  std::string model = "cubic1d";
  SchemeSpec scheme;
  std::vector<std::size_t> n_list = {64, 256, 1024};
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  /// Master grid 2^levels; also the strong-error reference resolution.
  int levels = 12;
  double horizon = 1.0;
  std::vector<double> t_query;
  int substeps = 4;
  std::optional<double> rho;
  std::optional<State> x0;
  /// Tail probe functional exp(p ||Y_t||^q_exp) at time probe_t.
  double p = 1.0;
  double q_exp = 2.0;
  std::optional<double> probe_t;
  std::vector<std::size_t> schedule;
  /// Strong error moment order.
  double r = 2.0;
  std::size_t residual_points = 10000;
  /// Polynomial degree bound of U fed to the prefactor.
  double bound_p = 4.0;
  std::vector<AssertionSpec> expected;
  /// Directory for CSV output; empty keeps results in memory only.
  std::string out_dir;

  /// Throws ConfigError when the experiment is malformed.
  void validate() const;
};

struct ResultTable {
  std::string file_name;
  std::string csv;
};

struct AssertionOutcome {
  std::string description;
  bool pass = false;
  std::string detail;
};

struct ExperimentResult {
  std::vector<ResultTable> tables;
  std::vector<AssertionOutcome> outcomes;
  bool pass() const;
};

/// Runs the experiment, evaluates its assertions, and writes one CSV per table
/// into out_dir when set.
ExperimentResult run(const Experiment& e, int workers);

/// Builds an experiment from a config file; missing keys take the defaults above
/// and `expect` defaults per kind.
Experiment experiment_from_config(const Config& cfg);

std::vector<std::string> canned_experiment_names();
/// Throws ConfigError for unknown names.
Experiment canned_experiment(const std::string& name);

}  // namespace emsde
