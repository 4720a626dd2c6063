#include "emsde/lyapunov.hpp"

#include <array>
#include <cmath>

namespace emsde {

namespace {

void require_finite(double v, const char* what, const State& x) {
  if (!std::isfinite(v)) {
    throw NumericError(std::string("non-finite ") + what + " at x = " + format_state(x));
  }
}

}  // namespace

bool ModelCard::constraints_hold() const {
  for (const auto& c : param_constraints) {
    if (!c.holds(pair.params)) return false;
  }
  return true;
}

double generator_apply(const SdeProblem& prob, const LyapunovPair& pair, const State& x) {
  const State mu = prob.mu(x);
  const Diffusion sigma = prob.sigma(x);
  const State grad = pair.grad_U(x);
  const Square hess = pair.hess_U(x);
  const double drift_term = mu.dot(grad);
  require_finite(drift_term, "<mu, grad U>", x);
  // trace(sigma sigma^* H) = sum over columns of sigma_j^T H sigma_j
  const double diffusion_term = 0.5 * (sigma.transpose() * hess * sigma).trace();
  require_finite(diffusion_term, "trace term", x);
  return drift_term + diffusion_term;
}

double lyapunov_residual(const SdeProblem& prob, const LyapunovPair& pair, const State& x) {
  const double gen = generator_apply(prob, pair, x);
  const Noise proj = prob.sigma(x).transpose() * pair.grad_U(x);
  const double u = pair.U(x);
  const double ubar = pair.U_bar(x);
  const double r = gen + 0.5 * proj.squaredNorm() + ubar - pair.rho * u;
  require_finite(r, "residual", x);
  return r;
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double tol) {
  if (!(hi > lo)) throw InvalidArgument("golden_section_minimize needs lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

std::vector<State> halton_samples(const SamplingBox& box, std::size_t count) {
  static constexpr std::array<int, kMaxDim> primes{2, 3, 5, 7, 11, 13};
  const auto dim = box.lo.size();
  std::vector<State> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    State x(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      // radical inverse of (i + 1) in base primes[k]
      const int base = primes[static_cast<std::size_t>(k)];
      double f = 1.0;
      double r = 0.0;
      std::size_t n = i + 1;
      while (n > 0) {
        f /= base;
        r += f * static_cast<double>(n % static_cast<std::size_t>(base));
        n /= static_cast<std::size_t>(base);
      }
      x[k] = box.lo[k] + r * (box.hi[k] - box.lo[k]);
    }
    out.push_back(x);
  }
  return out;
}

ResidualSweep residual_sweep(const ModelCard& card, std::size_t count, double tol) {
  ResidualSweep out;
  out.model = card.name;
  out.worst = card.x0;
  for (const State& x : halton_samples(card.box, count)) {
    const double scaled =
        lyapunov_residual(card.problem, card.pair, x) / (1.0 + std::abs(card.pair.U(x)));
    if (scaled > out.max_scaled_residual) {
      out.max_scaled_residual = scaled;
      out.worst = x;
    }
    out.max_abs_scaled_residual = std::max(out.max_abs_scaled_residual, std::abs(scaled));
  }
  out.pass = out.max_scaled_residual <= tol;
  return out;
}

}  // namespace emsde
