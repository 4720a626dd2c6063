#pragma once

#include "emsde/schemes.hpp"
#include "emsde/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace emsde {

struct BoundInputs {
  double rho = 0.0;
  double c = 1.0;
  double p = 1.0;
  double q = 2.0;
  double gamma = 1.0;
  double T = 1.0;
  double mesh = 1.0;
  /// Defaults to the midpoint of the admissible window.
  std::optional<double> alpha;
};

/// Open upper end of the admissible alpha window, 1/2 min{1/(7g+2), (q-1)/((q+8)g+2)}.
double alpha_window(double gamma, double q);

/// The prefactor F of the stopped-scheme moment bound in nested-log form:
///   log F = max(rho,1) * min(mesh,1)^e1 * exp(B^e2),  B = 5 c q max(T,1).
/// F itself, and usually log F, overflow doubles, so only logs are stored.
struct PrefactorLog {
  double e1 = 0.0;
  double e2 = 0.0;
  double alpha = 0.0;
  /// ln max(rho,1) + e1 ln min(mesh,1); -inf when mesh = 0.
  double scale_log = 0.0;
  /// e2 ln B.
  double tower_log = 0.0;

  /// ln ln F = scale_log + exp(tower_log).
  double log_log_F() const;
  /// ln F; +inf when not representable, 0 in the mesh -> 0 limit.
  double log_F() const;
  /// ln ln ln F, finite whenever ln ln F > 0 even if ln ln F overflows.
  double log3() const;
};

/// Throws InvalidArgument when the inputs violate p, c >= 1, q > 1, mesh >= 0,
/// or alpha lies outside (0, alpha_window), or e1 <= 0.
PrefactorLog theorem_prefactor_log(const BoundInputs& inp);

/// Orders two prefactors by F: negative, zero or positive.
int compare_prefactors(const PrefactorLog& a, const PrefactorLog& b);

/// 2 exp(t ||A||_HS^2 / 2), the bound on E[exp(||A W_t||)].
double gauss_exp_bound(const Diffusion& a, double t);

/// E[exp(s |Z|)] for standard normal Z: 2 exp(s^2/2) Phi(s).
double expected_exp_abs_normal(double s);

/// (2n)! / (2^n n!) ||A||_HS^(2n) t^n, the bound on E||A W_t||^(2n).
double gauss_even_moment_bound(const Diffusion& a, double t, int n);

struct GaussCheck {
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  /// estimate <= bound + 3 std_error
  bool pass = false;
};

/// Monte Carlo estimate of E[exp(||A W_t||)] against gauss_exp_bound.
GaussCheck gauss_exp_check(const Diffusion& a, double t, std::size_t samples, std::uint64_t seed);

/// Monte Carlo estimate of E||A W_t||^(2n) against gauss_even_moment_bound.
GaussCheck gauss_even_moment_check(const Diffusion& a, double t, int n, std::size_t samples,
                                   std::uint64_t seed);

enum class Verdict { PreservedBounded, FinitePerNUnboundedInN, InfiniteForEveryN, Unclassified };

std::string_view to_string(Verdict v);

struct FinitenessVerdict {
  Verdict verdict = Verdict::Unclassified;
  std::string basis;
};

/// Behaviour of sup_t E[exp(p |Y_t^N|^q_exp)] for the cubic test equation, from a
/// fixed table; anything outside it is Unclassified.
FinitenessVerdict classify_exp_moment(SchemeKind kind, double p, double q_exp);

/// q beta > 2 alpha + 1.
bool unbounded_criterion(double alpha, double beta, double q);

struct SeriesCheck {
  /// e^x + e^-x
  double lhs = 0.0;
  /// 2 sum_{n < n_terms} x^(2n) / (2n)!
  double rhs = 0.0;
};

/// Throws InvalidArgument for |x| > 30 or n_terms < 1.
SeriesCheck exp_series_check(double x, int n_terms);

}  // namespace emsde
