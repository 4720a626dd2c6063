#include "emsde/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace emsde {

std::string format_state(const State& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ')';
  return os.str();
}

Partition::Partition(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw InvalidArgument("partition needs at least two points");
  if (times_.front() != 0.0) throw InvalidArgument("partition must start at 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]) || !std::isfinite(times_[i])) {
      throw InvalidArgument("partition times must be finite and strictly increasing");
    }
    mesh_ = std::max(mesh_, times_[i] - times_[i - 1]);
  }
}

Partition::Partition(std::vector<double> times, double mesh, std::size_t uniform_n)
    : times_(std::move(times)), mesh_(mesh), uniform_n_(uniform_n) {}

Partition Partition::uniform(std::size_t n_steps, double horizon) {
  if (n_steps == 0) throw InvalidArgument("uniform partition needs N >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("uniform partition needs a finite horizon T > 0");
  }
  std::vector<double> t(n_steps + 1);
  const auto n = static_cast<double>(n_steps);
  for (std::size_t i = 0; i <= n_steps; ++i) t[i] = static_cast<double>(i) * horizon / n;
  t.back() = horizon;
  return Partition(std::move(t), horizon / n, n_steps);
}

std::size_t Partition::floor_index(double t) const {
  if (!(t >= 0.0) || t > horizon()) {
    throw InvalidArgument("time " + std::to_string(t) + " outside [0, T]");
  }
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  return static_cast<std::size_t>(it - times_.begin()) - 1;
}

GrowthReport polynomial_growth_check(const SdeProblem& prob, std::span<const State> samples) {
  if (samples.empty()) throw InvalidArgument("polynomial_growth_check needs samples");
  GrowthReport report;
  const double c = prob.growth_c;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const State& x = samples[i];
    double lhs = 0.0;
    try {
      lhs = prob.mu(x).norm() + hs_norm(prob.sigma(x));
    } catch (const std::exception& e) {
      throw NumericError("coefficient evaluation failed at sample " + std::to_string(i) + ": " +
                         e.what());
    }
    if (!std::isfinite(lhs)) {
      throw NumericError("non-finite coefficients at sample " + std::to_string(i) + " " +
                         format_state(x));
    }
    const double ratio = lhs / (c * (1.0 + std::pow(x.norm(), c)));
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = i;
    }
  }
  report.pass = report.max_ratio <= 1.0 + 1e-12;
  return report;
}

}  // namespace emsde
