#pragma once

#include "emsde/types.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace emsde {

using DriftFn = std::function<State(const State&)>;
using DiffusionFn = std::function<Diffusion(const State&)>;
using DomainFn = std::function<bool(const State&)>;
using DistanceFn = std::function<double(const State&)>;
using SplitFn = std::function<Square(const State&)>;

/// Ito SDE dX = mu(X) dt + sigma(X) dW on an open domain D of R^d driven by
/// an m-dimensional Brownian motion.
struct SdeProblem {
  int d = 1;
  int m = 1;
  DriftFn mu;
  DiffusionFn sigma;
  /// Indicator of the open set D; empty means D = R^d.
  DomainFn domain;
  /// Optional signed distance to the boundary of D (positive inside), used only
  /// in diagnostics.
  DistanceFn domain_distance;
  /// Optional semilinear split mu(x) = A(x) x used by the linear-implicit scheme.
  SplitFn linear_part;
  /// Polynomial growth constant c in ||mu(x)|| + ||sigma(x)||_HS <= c (1 + ||x||^c).
  double growth_c = 1.0;

  bool in_domain(const State& x) const { return !domain || domain(x); }
  bool supports_linear_implicit() const { return static_cast<bool>(linear_part); }
};

/// Finite partition 0 = t_0 < t_1 < ... < t_n = T.
///
/// Uniform partitions keep (N, T) and materialize t_i = i * T / N from the
/// integer index, so grid times are bit-stable no matter how they are reached.
class Partition {
 public:
  /// Builds a general partition; throws InvalidArgument unless times is strictly
  /// increasing, starts at 0 and has at least two points.
  explicit Partition(std::vector<double> times);

  static Partition uniform(std::size_t n_steps, double horizon);

  double horizon() const { return times_.back(); }
  /// Number of intervals, l(theta).
  std::size_t intervals() const { return times_.size() - 1; }
  std::span<const double> times() const { return times_; }
  double time(std::size_t i) const { return times_[i]; }
  double step(std::size_t i) const { return times_[i + 1] - times_[i]; }
  /// Maximal gap ||theta||.
  double mesh() const { return mesh_; }
  bool is_uniform() const { return uniform_n_ != 0; }
  std::size_t uniform_steps() const { return uniform_n_; }

  /// Index of the greatest grid point <= t. Throws for t outside [0, T].
  std::size_t floor_index(double t) const;
  /// Greatest grid point <= t.
  double floor_time(double t) const { return times_[floor_index(t)]; }

 private:
  Partition(std::vector<double> times, double mesh, std::size_t uniform_n);

  std::vector<double> times_;
  double mesh_ = 0.0;
  std::size_t uniform_n_ = 0;
};

inline Partition uniform_partition(std::size_t n_steps, double horizon) {
  return Partition::uniform(n_steps, horizon);
}

inline double floor_time(const Partition& p, double t) { return p.floor_time(t); }

struct GrowthReport {
  double max_ratio = 0.0;
  std::size_t argmax = 0;
  bool pass = true;
};

/// Evaluates (||mu(x)|| + ||sigma(x)||_HS) / (c (1 + ||x||^c)) at each sample and
/// reports the worst ratio; passes iff it is <= 1 + 1e-12.
GrowthReport polynomial_growth_check(const SdeProblem& prob, std::span<const State> samples);

}  // namespace emsde
