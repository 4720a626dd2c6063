#pragma once

#include "emsde/paths.hpp"
#include "emsde/problem.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emsde {

enum class SchemeKind {
  EulerStopped,
  LinearImplicitStopped,
  TamedMax,
  TamedPlus,
  StoppedIncrementTamed,
};

std::string_view to_string(SchemeKind kind);
/// Accepts the CLI spellings (euler, linear_implicit, tamed_max, tamed_plus,
/// stopped_increment_tamed / sit); throws ConfigError otherwise.
SchemeKind parse_scheme_kind(std::string_view name);

/// exp(|ln(N / T)|^(1/2)).
double stop_level(std::size_t n_steps, double horizon);

/// Level rule of the proposed method expressed in the mesh h: exp(|ln h|^(1/2)).
double default_level_rule(double mesh);

/// Family of admissible regions D_h indexed by the mesh h.
struct StoppingFamily {
  enum class Kind { WholeSpace, NormLevel, DomainAndNormLevel };

  Kind kind = Kind::DomainAndNormLevel;
  /// Radius as a function of mesh; must be non-increasing in h.
  std::function<double(double)> level_rule = default_level_rule;

  static StoppingFamily whole_space() { return {Kind::WholeSpace, default_level_rule}; }
  static StoppingFamily norm_level() { return {Kind::NormLevel, default_level_rule}; }
  static StoppingFamily domain_and_norm_level() {
    return {Kind::DomainAndNormLevel, default_level_rule};
  }

  /// Indicator 1_{D_h}(x). The domain is checked before the norm level.
  bool contains(const SdeProblem& prob, const State& x, double mesh) const {
    return contains_at_level(prob, x, level(mesh));
  }
  /// Norm radius for this mesh; +inf for WholeSpace.
  double level(double mesh) const;
  bool contains_at_level(const SdeProblem& prob, const State& x, double level) const;
};

struct SchemeSpec {
  SchemeKind kind = SchemeKind::StoppedIncrementTamed;
  /// Taming exponent of the stopped increment-tamed scheme, q > 1.
  double q = 2.0;
  StoppingFamily stop = StoppingFamily::domain_and_norm_level();

  /// Throws InvalidArgument on q <= 1 for the increment-tamed kind.
  void validate() const;
};

/// Largest possible increment norm of the stopped increment-tamed map,
/// max_{r >= 0} r / (1 + r^q) = (q - 1)^(1 - 1/q) / q.
double max_tamed_increment(double q);

/// One-step map: the state reached after elapsed time s in (0, h] of a step that
/// starts at grid value x, given the Brownian increment dw over that elapsed
/// time. `mesh` selects D_h. Returns x unchanged outside D_h.
State step(const SchemeSpec& spec, const SdeProblem& prob, const State& x, double s, double mesh,
           const Noise& dw);

/// Increment of the one-step map with the stopping indicator ignored, i.e. the
/// function phi(x, t, y) the scheme applies inside D_h.
State raw_increment(const SchemeSpec& spec, const SdeProblem& prob, const State& x, double s,
                    const Noise& dw);

struct SchemePath {
  std::vector<State> states;
  /// First grid time at which the indicator failed; horizon when it never did.
  double tau = 0.0;
  /// Grid index of that time.
  std::optional<std::size_t> frozen_from;
};

/// Iterates the one-step map over the partition.
SchemePath simulate(const SchemeSpec& spec, const SdeProblem& prob, const Partition& part,
                    const State& x0, const std::vector<Noise>& increments);

/// Continuous-time value at a master-grid time t, using the grid state at
/// floor(t) and the Brownian increment W_t - W_floor(t) taken from `master`.
State interpolate(const SchemeSpec& spec, const SdeProblem& prob, const SchemePath& path,
                  const Partition& part, const MasterPath& master, double t);

}  // namespace emsde
