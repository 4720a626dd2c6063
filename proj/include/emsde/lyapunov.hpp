#pragma once

#include "emsde/problem.hpp"

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace emsde {

using ScalarFn = std::function<double(const State&)>;
using GradientFn = std::function<State(const State&)>;
using HessianFn = std::function<Square(const State&)>;

/// Lyapunov-type pair (U, Ubar, rho) with
///   G U + 1/2 ||sigma^* grad U||^2 + Ubar <= rho U.
struct LyapunovPair {
  ScalarFn U;
  GradientFn grad_U;
  HessianFn hess_U;
  ScalarFn U_bar;
  double rho = 0.0;
  std::map<std::string, double> params;
  /// inf Ubar; -infinity when unbounded below.
  double ubar_lower_bound = -std::numeric_limits<double>::infinity();
};

struct ParamConstraint {
  std::string description;
  std::function<bool(const std::map<std::string, double>&)> holds;
};

/// Axis-aligned box used to draw test points for a model.
struct SamplingBox {
  State lo;
  State hi;
};

struct ModelCard {
  std::string name;
  SdeProblem problem;
  LyapunovPair pair;
  std::vector<ParamConstraint> param_constraints;
  std::string notes;
  SamplingBox box;
  /// Canonical deterministic initial value.
  State x0;
  /// Exponent gamma = c (c + 1) of the growth reduction.
  double gamma = 0.0;
  /// True when the residual vanishes identically (not just <= 0).
  bool residual_is_identity = false;

  bool constraints_hold() const;
};

/// <mu(x), grad U(x)> + 1/2 trace(sigma sigma^* Hess U)(x).
double generator_apply(const SdeProblem& prob, const LyapunovPair& pair, const State& x);

/// G U(x) + 1/2 ||sigma(x)^* grad U(x)||^2 + Ubar(x) - rho U(x); the pair is valid
/// where this is <= 0.
double lyapunov_residual(const SdeProblem& prob, const LyapunovPair& pair, const State& x);

/// Golden-section search for the minimizer of a unimodal function on [lo, hi].
struct MinimizeResult {
  double argmin;
  double value;
};
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double tol = 1e-10);

// Model factories. Defaults satisfy the constraints stated on each card.

ModelCard make_cubic1d(double delta = 0.1);
ModelCard make_ginzburg_landau(double alpha = 1.0, double beta = 1.0, double delta = 1.0,
                               double eps = 0.5);
ModelCard make_lorenz(double alpha1 = 10.0, double alpha2 = 28.0, double alpha3 = 8.0 / 3.0,
                      double beta = 1.0, double eps = 0.1);
ModelCard make_van_der_pol(double alpha = 1.0, double gamma = 1.0, double delta = 2.0,
                           double eta0 = 1.0, double eta1 = 0.5, double eps = 0.5);
ModelCard make_duffing_van_der_pol(double alpha1 = 1.0, double alpha2 = 1.0, double alpha3 = 1.0,
                                   double eta0 = 1.0, double eta1 = 0.5, double eps = 0.5);
ModelCard make_psychology(double alpha = 0.5, double beta = 1.0, double delta = 1.0,
                          double eps = 0.1, double power = 4.0);
ModelCard make_sir(double alpha = 1.0, double beta = 0.5, double gamma = 1.0, double delta = 1.0,
                   double eps = 0.1, double eps_hat = 0.2);
ModelCard make_langevin(double beta = 1.0, double gamma = 1.0, double eps = 0.5);
ModelCard make_overdamped_langevin(double beta = 1.0, double eps = 0.5);

/// Lorenz rate term min_{r>0} max{(a1 + a2)^2 / r - 2 a1, r - 1, 0}.
double lorenz_theta(double alpha1, double alpha2);
/// van der Pol rate min_{r>0} max{|delta - 1| / r + eta1, r |delta - 1| + 2 gamma + 4 eta0 eps}.
double van_der_pol_theta(double gamma, double delta, double eta0, double eta1, double eps);

/// Smooth step phi(x) = g(x) / (g(x) + g(1 - x)), g(x) = exp(-1/x) for x > 0.
/// Returns {phi, phi', phi''}.
struct SmoothStep {
  double value;
  double d1;
  double d2;
};
SmoothStep smooth_step(double x);

/// All nine built-in models in a fixed order.
std::vector<ModelCard> model_zoo();
std::vector<std::string> model_names();
/// Looks a model up by its CLI name; throws ConfigError for unknown names.
ModelCard model_by_name(std::string_view name);

/// Quasi-random (Halton) points in a box; deterministic.
std::vector<State> halton_samples(const SamplingBox& box, std::size_t count);

struct ResidualSweep {
  std::string model;
  double max_scaled_residual = -std::numeric_limits<double>::infinity();
  double max_abs_scaled_residual = 0.0;
  State worst;
  bool pass = false;
};

/// Evaluates residual(x) / (1 + |U(x)|) over `count` Halton points in the
/// card's box. Passes iff every scaled residual is <= tol.
ResidualSweep residual_sweep(const ModelCard& card, std::size_t count, double tol = 1e-9);

}  // namespace emsde
