#include "emsde/schemes.hpp"

#include <cmath>
#include <limits>

namespace emsde {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::EulerStopped: return "euler";
    case SchemeKind::LinearImplicitStopped: return "linear_implicit";
    case SchemeKind::TamedMax: return "tamed_max";
    case SchemeKind::TamedPlus: return "tamed_plus";
    case SchemeKind::StoppedIncrementTamed: return "stopped_increment_tamed";
  }
  return "unknown";
}

SchemeKind parse_scheme_kind(std::string_view name) {
  if (name == "euler") return SchemeKind::EulerStopped;
  if (name == "linear_implicit") return SchemeKind::LinearImplicitStopped;
  if (name == "tamed_max") return SchemeKind::TamedMax;
  if (name == "tamed_plus") return SchemeKind::TamedPlus;
  if (name == "stopped_increment_tamed" || name == "sit") return SchemeKind::StoppedIncrementTamed;
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

double stop_level(std::size_t n_steps, double horizon) {
  return std::exp(std::sqrt(std::abs(std::log(static_cast<double>(n_steps) / horizon))));
}

double default_level_rule(double mesh) { return std::exp(std::sqrt(std::abs(std::log(mesh)))); }

double StoppingFamily::level(double mesh) const {
  if (kind == Kind::WholeSpace) return std::numeric_limits<double>::infinity();
  return level_rule(mesh);
}

bool StoppingFamily::contains_at_level(const SdeProblem& prob, const State& x, double level) const {
  switch (kind) {
    case Kind::WholeSpace: return true;
    case Kind::NormLevel: return x.squaredNorm() <= level * level;
    case Kind::DomainAndNormLevel: return prob.in_domain(x) && x.squaredNorm() <= level * level;
  }
  return true;
}

void SchemeSpec::validate() const {
  if (kind == SchemeKind::StoppedIncrementTamed && !(q > 1.0)) {
    throw InvalidArgument("taming exponent q must exceed 1");
  }
}

double max_tamed_increment(double q) { return std::pow(q - 1.0, 1.0 - 1.0 / q) / q; }

State raw_increment(const SchemeSpec& spec, const SdeProblem& prob, const State& x, double s,
                    const Noise& dw) {
  const State mu = prob.mu(x);
  const Diffusion sigma = prob.sigma(x);
  if (!mu.allFinite() || !sigma.allFinite()) {
    throw NumericError("non-finite coefficients at x = " + format_state(x));
  }
  if (spec.kind == SchemeKind::LinearImplicitStopped) {
    if (!prob.linear_part) throw InvalidArgument("model has no semilinear split for the linear-implicit scheme");
    const Square a = prob.linear_part(x);
    const Square lhs = Square::Identity(prob.d, prob.d) - s * a;
    const State rhs = x + sigma * dw;
    const State y = lhs.partialPivLu().solve(rhs);
    return y - x;
  }
  const State z = mu * s + sigma * dw;
  switch (spec.kind) {
    case SchemeKind::EulerStopped: return z;
    case SchemeKind::TamedMax: return z / std::max(1.0, s * z.norm());
    case SchemeKind::TamedPlus: return z / (1.0 + s * z.norm());
    case SchemeKind::StoppedIncrementTamed:
      if (spec.q == 2.0) return z / (1.0 + z.squaredNorm());
      return z / (1.0 + std::pow(z.norm(), spec.q));
    case SchemeKind::LinearImplicitStopped: break;
  }
  return z;
}

State step(const SchemeSpec& spec, const SdeProblem& prob, const State& x, double s, double mesh,
           const Noise& dw) {
  if (!spec.stop.contains(prob, x, mesh)) return x;
  return x + raw_increment(spec, prob, x, s, dw);
}

SchemePath simulate(const SchemeSpec& spec, const SdeProblem& prob, const Partition& part,
                    const State& x0, const std::vector<Noise>& increments) {
  if (increments.size() != part.intervals()) {
    throw InvalidArgument("increment count does not match the partition");
  }
  if (!x0.allFinite()) throw InvalidArgument("initial value must be finite");
  const std::size_t n = part.intervals();
  const double level = spec.stop.level(part.mesh());
  SchemePath path;
  path.states.reserve(n + 1);
  path.states.push_back(x0);
  path.tau = part.horizon();
  for (std::size_t i = 0; i < n; ++i) {
    const State& x = path.states.back();
    if (!spec.stop.contains_at_level(prob, x, level)) {
      path.frozen_from = i;
      path.tau = part.time(i);
      const State frozen = x;
      path.states.resize(n + 1, frozen);
      return path;
    }
    path.states.push_back(x + raw_increment(spec, prob, x, part.step(i), increments[i]));
  }
  if (!spec.stop.contains_at_level(prob, path.states.back(), level)) path.frozen_from = n;
  return path;
}

State interpolate(const SchemeSpec& spec, const SdeProblem& prob, const SchemePath& path,
                  const Partition& part, const MasterPath& master, double t) {
  const std::size_t k = master.index_of(t);
  const std::size_t n = part.floor_index(t);
  const double grid_t = part.time(n);
  if (grid_t == t) return path.states[n];
  const std::size_t k0 = master.index_of(grid_t);
  return step(spec, prob, path.states[n], t - grid_t, part.mesh(), master.range_sum(k0, k));
}

}  // namespace emsde
