#include "emsde/analysis.hpp"

#include "emsde/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace emsde {

double alpha_window(double gamma, double q) {
  return 0.5 * std::min(1.0 / (7.0 * gamma + 2.0), (q - 1.0) / ((q + 8.0) * gamma + 2.0));
}

double PrefactorLog::log_log_F() const {
  if (scale_log == -std::numeric_limits<double>::infinity()) return scale_log;
  return scale_log + std::exp(tower_log);
}

double PrefactorLog::log_F() const { return std::exp(log_log_F()); }

double PrefactorLog::log3() const {
  if (scale_log == -std::numeric_limits<double>::infinity()) return scale_log;
  return tower_log + std::log1p(scale_log * std::exp(-tower_log));
}

PrefactorLog theorem_prefactor_log(const BoundInputs& in) {
  if (!(in.p >= 1.0) || !(in.c >= 1.0)) throw InvalidArgument("p and c must be >= 1");
  if (!(in.q > 1.0)) throw InvalidArgument("q must exceed 1");
  if (!(in.gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (!(in.T > 0.0)) throw InvalidArgument("T must be positive");
  if (!(in.mesh >= 0.0)) throw InvalidArgument("mesh must be non-negative");
  const double window = alpha_window(in.gamma, in.q);
  const double alpha = in.alpha.value_or(0.5 * window);
  if (!(alpha > 0.0 && alpha < window)) {
    throw InvalidArgument("alpha outside (0, " + std::to_string(window) + ")");
  }
  PrefactorLog out;
  out.alpha = alpha;
  out.e1 = std::min(0.5, 0.5 * (in.q - 1.0) - alpha * (in.q + 1.0) * in.gamma) -
           alpha * (7.0 * in.gamma + 2.0);
  if (!(out.e1 > 0.0)) throw InvalidArgument("mesh exponent e1 is not positive");
  out.e2 = 9.0 * in.p * (in.q + 1.0) * std::max(in.gamma, 1.0) *
           std::max({in.gamma, in.q, 2.0}) * (in.gamma + 2.0);
  const double base = 5.0 * in.c * in.q * std::max(in.T, 1.0);
  out.tower_log = out.e2 * std::log(base);
  out.scale_log = std::log(std::max(in.rho, 1.0)) + out.e1 * std::log(std::min(in.mesh, 1.0));
  return out;
}

int compare_prefactors(const PrefactorLog& a, const PrefactorLog& b) {
  const double la = a.log_log_F();
  const double lb = b.log_log_F();
  if (std::isfinite(la) && std::isfinite(lb)) return (la > lb) - (la < lb);
  if (la == lb) {
    const double ca = a.log3();
    const double cb = b.log3();
    return (ca > cb) - (ca < cb);
  }
  return la < lb ? -1 : 1;
}

double gauss_exp_bound(const Diffusion& a, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("t must be non-negative");
  return 2.0 * std::exp(0.5 * t * hs_norm_squared(a));
}

double expected_exp_abs_normal(double s) { return 2.0 * std::exp(0.5 * s * s) * normal_cdf(s); }

double gauss_even_moment_bound(const Diffusion& a, double t, int n) {
  // (2n)! / (2^n n!) = (2n - 1)!!
  double dfact = 1.0;
  for (int k = 2 * n - 1; k > 1; k -= 2) dfact *= k;
  return dfact * std::pow(hs_norm_squared(a) * t, n);
}

namespace {

template <typename F>
GaussCheck gauss_mc(const Diffusion& a, double t, std::size_t samples, std::uint64_t seed,
                    double bound, F&& f) {
  if (samples < 2) throw InvalidArgument("need at least two samples");
  const int m = static_cast<int>(a.cols());
  const double scale = std::sqrt(t);
  double sum = 0.0;
  double sum_sq = 0.0;
  Noise z(m);
  for (std::size_t i = 0; i < samples; ++i) {
    CounterNormal(seed, i).fill(0, z.data(), static_cast<std::size_t>(m));
    const double v = f((a * (scale * z)).norm());
    sum += v;
    sum_sq += v * v;
  }
  const auto n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  GaussCheck out;
  out.estimate = mean;
  out.std_error = std::sqrt(var / n);
  out.bound = bound;
  out.pass = mean <= bound + 3.0 * out.std_error;
  return out;
}

}  // namespace

GaussCheck gauss_exp_check(const Diffusion& a, double t, std::size_t samples, std::uint64_t seed) {
  return gauss_mc(a, t, samples, seed, gauss_exp_bound(a, t), [](double r) { return std::exp(r); });
}

GaussCheck gauss_even_moment_check(const Diffusion& a, double t, int n, std::size_t samples,
                                   std::uint64_t seed) {
  return gauss_mc(a, t, samples, seed, gauss_even_moment_bound(a, t, n),
                  [n](double r) { return std::pow(r, 2 * n); });
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PreservedBounded: return "PreservedBounded";
    case Verdict::FinitePerNUnboundedInN: return "FinitePerNUnboundedInN";
    case Verdict::InfiniteForEveryN: return "InfiniteForEveryN";
    case Verdict::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

FinitenessVerdict classify_exp_moment(SchemeKind kind, double p, double q_exp) {
  switch (kind) {
    case SchemeKind::EulerStopped:
      if (q_exp > 2.0) return {Verdict::InfiniteForEveryN, "euler divergence lemma"};
      return {Verdict::FinitePerNUnboundedInN, "external citation"};
    case SchemeKind::LinearImplicitStopped:
      if (q_exp > 2.0) return {Verdict::InfiniteForEveryN, "linear-implicit divergence lemma"};
      break;
    case SchemeKind::TamedMax:
    case SchemeKind::TamedPlus:
      if (q_exp > 3.0) return {Verdict::FinitePerNUnboundedInN, "tamed divergence corollary"};
      break;
    case SchemeKind::StoppedIncrementTamed:
      // exp(delta |x|^4) with delta < 1/2 is the preserved Lyapunov moment; lower
      // powers are dominated by it.
      if (q_exp < 4.0 || (q_exp == 4.0 && p < 0.5)) {
        return {Verdict::PreservedBounded, "stopped increment-tamed moment theorem"};
      }
      break;
  }
  return {Verdict::Unclassified, "not classified"};
}

bool unbounded_criterion(double alpha, double beta, double q) { return q * beta > 2.0 * alpha + 1.0; }

SeriesCheck exp_series_check(double x, int n_terms) {
  if (!(std::abs(x) <= 30.0)) throw InvalidArgument("|x| must be at most 30");
  if (n_terms < 1) throw InvalidArgument("need at least one term");
  double term = 1.0;
  double sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    sum += term;
    term *= x * x / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
  }
  return {std::exp(x) + std::exp(-x), 2.0 * sum};
}

}  // namespace emsde
