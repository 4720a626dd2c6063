// Built-in example SDEs together with their Lyapunov pairs.

#include "emsde/lyapunov.hpp"

#include <cmath>

namespace emsde {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGrowthC = 3.0;

State vec(std::initializer_list<double> v) {
  State x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

SamplingBox cube(int d, double lo, double hi) {
  return {State::Constant(d, lo), State::Constant(d, hi)};
}

ParamConstraint constraint(std::string text,
                           std::function<bool(const std::map<std::string, double>&)> f) {
  return {std::move(text), std::move(f)};
}

void finish(ModelCard& card, double growth_c = kGrowthC) {
  card.problem.growth_c = growth_c;
  card.gamma = growth_c * (growth_c + 1.0);
}

}  // namespace

double lorenz_theta(double alpha1, double alpha2) {
  const double s = (alpha1 + alpha2) * (alpha1 + alpha2);
  const auto f = [&](double r) { return std::max({s / r - 2.0 * alpha1, r - 1.0, 0.0}); };
  return golden_section_minimize(f, 1e-12, 100.0).value;
}

double van_der_pol_theta(double gamma, double delta, double eta0, double eta1, double eps) {
  const double a = std::abs(delta - 1.0);
  const double b = 2.0 * gamma + 4.0 * eta0 * eps;
  const auto f = [&](double r) { return std::max(a / r + eta1, r * a + b); };
  return golden_section_minimize(f, 1e-12, 100.0).value;
}

SmoothStep smooth_step(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  // g(y) = exp(-1/y), g' = g / y^2, g'' = g (1/y^4 - 2/y^3)
  const auto g = [](double y) { return std::exp(-1.0 / y); };
  const double y = 1.0 - x;
  const double a = g(x);
  const double b = g(y);
  const double a1 = a / (x * x);
  const double b1 = -b / (y * y);  // d/dx g(1 - x)
  const double a2 = a * (1.0 / std::pow(x, 4) - 2.0 / std::pow(x, 3));
  const double b2 = b * (1.0 / std::pow(y, 4) - 2.0 / std::pow(y, 3));
  const double s = a + b;
  const double s1 = a1 + b1;
  const double n = a1 * b - a * b1;
  const double n1 = a2 * b - a * b2;
  return {a / s, n / (s * s), (n1 * s - 2.0 * n * s1) / (s * s * s)};
}

ModelCard make_cubic1d(double delta) {
  ModelCard card;
  card.name = "cubic1d";
  card.notes = "dX = -X^3 dt + dW with U = delta x^4";
  auto& p = card.problem;
  p.d = 1;
  p.m = 1;
  p.mu = [](const State& x) { return State(-x.array().cube()); };
  p.sigma = [](const State&) { return Diffusion::Ones(1, 1); };
  p.linear_part = [](const State& x) { return Square::Constant(1, 1, -x[0] * x[0]); };

  auto& u = card.pair;
  u.params = {{"delta", delta}};
  u.U = [delta](const State& x) { return delta * std::pow(x[0], 4); };
  u.grad_U = [delta](const State& x) { return State::Constant(1, 4.0 * delta * std::pow(x[0], 3)); };
  u.hess_U = [delta](const State& x) { return Square::Constant(1, 1, 12.0 * delta * x[0] * x[0]); };
  u.U_bar = [delta](const State& x) {
    const double x2 = x[0] * x[0];
    return 4.0 * delta * (1.0 - 2.0 * delta) * x2 * x2 * x2 - 6.0 * delta * x2;
  };
  u.rho = 0.0;
  // a y^3 - b y with y = x^2 is minimal at y = sqrt(b / (3a))
  const double a = 4.0 * delta * (1.0 - 2.0 * delta);
  const double b = 6.0 * delta;
  u.ubar_lower_bound = a > 0.0 ? -(2.0 * b / 3.0) * std::sqrt(b / (3.0 * a)) : -kInf;

  card.param_constraints = {constraint("delta in (0, 1/2]", [](const auto& q) {
    return q.at("delta") > 0.0 && q.at("delta") <= 0.5;
  })};
  card.box = cube(1, -3.0, 3.0);
  card.x0 = vec({0.0});
  card.residual_is_identity = true;
  finish(card);
  return card;
}

ModelCard make_ginzburg_landau(double alpha, double beta, double delta, double eps) {
  ModelCard card;
  card.name = "ginzburg_landau";
  card.notes = "dX = (alpha X - delta X^3) dt + beta X dW with U = eps x^2";
  auto& p = card.problem;
  p.d = 1;
  p.m = 1;
  p.mu = [=](const State& x) { return State::Constant(1, alpha * x[0] - delta * std::pow(x[0], 3)); };
  p.sigma = [=](const State& x) { return Diffusion::Constant(1, 1, beta * x[0]); };
  p.linear_part = [=](const State& x) { return Square::Constant(1, 1, alpha - delta * x[0] * x[0]); };

  auto& u = card.pair;
  u.params = {{"alpha", alpha}, {"beta", beta}, {"delta", delta}, {"eps", eps}};
  u.U = [=](const State& x) { return eps * x[0] * x[0]; };
  u.grad_U = [=](const State& x) { return State::Constant(1, 2.0 * eps * x[0]); };
  u.hess_U = [=](const State&) { return Square::Constant(1, 1, 2.0 * eps); };
  u.U_bar = [=](const State& x) {
    return 2.0 * eps * (delta - beta * beta * eps) * std::pow(x[0], 4);
  };
  u.rho = 2.0 * alpha + beta * beta;
  u.ubar_lower_bound = 0.0;

  card.param_constraints = {
      constraint("alpha >= 0, beta > 0, delta > 0",
                 [](const auto& q) { return q.at("alpha") >= 0.0 && q.at("beta") > 0.0 && q.at("delta") > 0.0; }),
      constraint("eps in (0, delta / beta^2]", [](const auto& q) {
        return q.at("eps") > 0.0 && q.at("eps") <= q.at("delta") / (q.at("beta") * q.at("beta"));
      })};
  card.box = cube(1, -3.0, 3.0);
  card.x0 = vec({0.0});
  card.residual_is_identity = true;
  finish(card);
  return card;
}

ModelCard make_lorenz(double alpha1, double alpha2, double alpha3, double beta, double eps) {
  ModelCard card;
  card.name = "lorenz";
  card.notes = "stochastic Lorenz system with additive noise sqrt(beta) dW, U = eps ||x||^2";
  auto& p = card.problem;
  p.d = 3;
  p.m = 3;
  p.mu = [=](const State& x) {
    return vec({alpha1 * (x[1] - x[0]), alpha2 * x[0] - x[1] - x[0] * x[2], x[0] * x[1] - alpha3 * x[2]});
  };
  const double sb = std::sqrt(beta);
  p.sigma = [sb](const State&) { return Diffusion(sb * Diffusion::Identity(3, 3)); };

  const double theta = lorenz_theta(alpha1, alpha2);
  auto& u = card.pair;
  u.params = {{"alpha1", alpha1}, {"alpha2", alpha2}, {"alpha3", alpha3},
              {"beta", beta},     {"eps", eps},       {"theta", theta}};
  u.U = [=](const State& x) { return eps * x.squaredNorm(); };
  u.grad_U = [=](const State& x) { return State(2.0 * eps * x); };
  u.hess_U = [=](const State&) { return Square(2.0 * eps * Square::Identity(3, 3)); };
  u.U_bar = [=](const State&) { return -3.0 * eps * beta; };
  u.rho = 2.0 * eps * beta + theta;
  u.ubar_lower_bound = -3.0 * eps * beta;

  card.param_constraints = {constraint("alpha_i >= 0, beta >= 0, eps > 0", [](const auto& q) {
    return q.at("alpha1") >= 0.0 && q.at("alpha2") >= 0.0 && q.at("alpha3") >= 0.0 &&
           q.at("beta") >= 0.0 && q.at("eps") > 0.0;
  })};
  card.box = cube(3, -10.0, 10.0);
  card.x0 = vec({0.0, 0.0, 0.0});
  // the linear part has entries up to alpha2 = 28, so c (1 + r^c) needs c near 25 at r = 1
  finish(card, 25.0);
  return card;
}

// g(y) = sqrt(eta0 + eta1 y^2) e_1^*, so ||g(y)||^2 = eta0 + eta1 y^2 with equality.
ModelCard make_van_der_pol(double alpha, double gamma, double delta, double eta0, double eta1,
                           double eps) {
  ModelCard card;
  card.name = "van_der_pol";
  card.notes = "stochastic van der Pol oscillator, noise g(x1) = sqrt(eta0 + eta1 x1^2)";
  auto& p = card.problem;
  p.d = 2;
  p.m = 1;
  p.mu = [=](const State& x) {
    return vec({x[1], (gamma - alpha * x[0] * x[0]) * x[1] - delta * x[0]});
  };
  p.sigma = [=](const State& x) {
    Diffusion s(2, 1);
    s << 0.0, std::sqrt(eta0 + eta1 * x[0] * x[0]);
    return s;
  };

  const double theta = van_der_pol_theta(gamma, delta, eta0, eta1, eps);
  auto& u = card.pair;
  u.params = {{"alpha", alpha}, {"gamma", gamma}, {"delta", delta}, {"eta0", eta0},
              {"eta1", eta1},   {"eps", eps},     {"theta", theta}};
  u.U = [=](const State& x) { return eps * x.squaredNorm(); };
  u.grad_U = [=](const State& x) { return State(2.0 * eps * x); };
  u.hess_U = [=](const State&) { return Square(2.0 * eps * Square::Identity(2, 2)); };
  u.U_bar = [=](const State& x) {
    const double x1x2 = x[0] * x[1];
    return 2.0 * eps * (alpha - eps * eta1) * x1x2 * x1x2 - eps * eta0;
  };
  u.rho = theta;
  u.ubar_lower_bound = -eps * eta0;

  card.param_constraints = {constraint("eps eta1 <= alpha", [](const auto& q) {
    return q.at("eps") > 0.0 && q.at("alpha") > 0.0 && q.at("eps") * q.at("eta1") <= q.at("alpha");
  })};
  card.box = cube(2, -5.0, 5.0);
  card.x0 = vec({0.0, 0.0});
  finish(card);
  return card;
}

ModelCard make_duffing_van_der_pol(double alpha1, double alpha2, double alpha3, double eta0,
                                   double eta1, double eps) {
  ModelCard card;
  card.name = "duffing_van_der_pol";
  card.notes = "stochastic Duffing-van der Pol oscillator, noise g(x1) = sqrt(eta0 + eta1 x1^2)";
  auto& p = card.problem;
  p.d = 2;
  p.m = 1;
  p.mu = [=](const State& x) {
    const double x1 = x[0];
    return vec({x[1], alpha2 * x[1] - alpha1 * x1 - alpha3 * x1 * x1 * x[1] - x1 * x1 * x1});
  };
  p.sigma = [=](const State& x) {
    Diffusion s(2, 1);
    s << 0.0, std::sqrt(eta0 + eta1 * x[0] * x[0]);
    return s;
  };

  const double lambda = eps * eta0 + alpha2;
  const double k = std::max(0.0, eta1 - 2.0 * alpha1 * lambda);
  const double shift = eps * k * k / (4.0 * lambda);
  auto& u = card.pair;
  u.params = {{"alpha1", alpha1}, {"alpha2", alpha2}, {"alpha3", alpha3},
              {"eta0", eta0},     {"eta1", eta1},     {"eps", eps}};
  u.U = [=](const State& x) {
    const double x1s = x[0] * x[0];
    return eps * (0.5 * x1s * x1s + alpha1 * x1s + x[1] * x[1]);
  };
  u.grad_U = [=](const State& x) {
    return vec({eps * (2.0 * std::pow(x[0], 3) + 2.0 * alpha1 * x[0]), eps * 2.0 * x[1]});
  };
  u.hess_U = [=](const State& x) {
    Square h = Square::Zero(2, 2);
    h(0, 0) = eps * (6.0 * x[0] * x[0] + 2.0 * alpha1);
    h(1, 1) = 2.0 * eps;
    return h;
  };
  u.U_bar = [=](const State& x) {
    const double x1x2 = x[0] * x[1];
    return 2.0 * eps * (alpha3 - eps * eta1) * x1x2 * x1x2 - eps * eta0 - shift;
  };
  u.rho = 2.0 * lambda;
  u.ubar_lower_bound = -eps * eta0 - shift;

  card.param_constraints = {constraint("eps eta1 <= alpha3, alpha2 > 0, alpha3 > 0", [](const auto& q) {
    return q.at("eps") > 0.0 && q.at("alpha2") > 0.0 && q.at("alpha3") > 0.0 &&
           q.at("eps") * q.at("eta1") <= q.at("alpha3");
  })};
  card.box = cube(2, -5.0, 5.0);
  card.x0 = vec({0.0, 0.0});
  finish(card);
  return card;
}

ModelCard make_psychology(double alpha, double beta, double delta, double eps, double power) {
  ModelCard card;
  card.name = "psychology";
  card.notes = "experimental psychology model, U = eps ||x||^q";
  auto& p = card.problem;
  p.d = 2;
  p.m = 1;
  p.mu = [=](const State& x) {
    const double k = delta + 4.0 * alpha * x[0];
    const double hb = 0.5 * beta * beta;
    return vec({x[1] * x[1] * k - hb * x[0], -x[0] * x[1] * k - hb * x[1]});
  };
  p.sigma = [=](const State& x) {
    Diffusion s(2, 1);
    s << -beta * x[1], beta * x[0];
    return s;
  };

  auto& u = card.pair;
  u.params = {{"alpha", alpha}, {"beta", beta}, {"delta", delta}, {"eps", eps}, {"q", power}};
  u.U = [=](const State& x) { return eps * std::pow(x.norm(), power); };
  u.grad_U = [=](const State& x) {
    const double r = x.norm();
    if (r == 0.0) return State(State::Zero(2));
    return State(eps * power * std::pow(r, power - 2.0) * x);
  };
  u.hess_U = [=](const State& x) {
    const double r = x.norm();
    if (r == 0.0) return Square(Square::Zero(2, 2));
    Square h = std::pow(r, power - 2.0) * Square::Identity(2, 2);
    h += (power - 2.0) * std::pow(r, power - 4.0) * (x * x.transpose());
    return Square(eps * power * h);
  };
  u.U_bar = [](const State&) { return 0.0; };
  u.rho = 0.0;
  u.ubar_lower_bound = 0.0;

  card.param_constraints = {constraint("alpha > 0, delta > 0, eps > 0, q >= 3", [](const auto& q) {
    return q.at("alpha") > 0.0 && q.at("delta") > 0.0 && q.at("eps") > 0.0 && q.at("q") >= 3.0;
  })};
  card.box = cube(2, -3.0, 3.0);
  card.x0 = vec({1.0, 0.0});
  card.residual_is_identity = true;
  finish(card);
  return card;
}

ModelCard make_sir(double alpha, double beta, double gamma, double delta, double eps,
                   double eps_hat) {
  ModelCard card;
  card.name = "sir";
  card.notes = "stochastic SIR model on D = (0, inf)^3, coefficients zero outside D";
  auto& p = card.problem;
  p.d = 3;
  p.m = 1;
  const auto inside = [](const State& x) { return x[0] > 0.0 && x[1] > 0.0 && x[2] > 0.0; };
  p.domain = inside;
  p.domain_distance = [](const State& x) { return x.minCoeff(); };
  p.mu = [=](const State& x) {
    if (!inside(x)) return State(State::Zero(3));
    const double i = alpha * x[0] * x[1];
    return vec({-i - delta * x[0] + delta, i - (gamma + delta) * x[1], gamma * x[1] - delta * x[2]});
  };
  p.sigma = [=](const State& x) {
    Diffusion s = Diffusion::Zero(3, 1);
    if (!inside(x)) return s;
    const double b = beta * x[0] * x[1];
    s << -b, b, 0.0;
    return s;
  };

  // psi(x1, x2) = phi(x1) phi(-x2) + phi(-x1) phi(x2) and its derivatives.
  struct Psi {
    double v, d1, d2, d11, d22, d12;
  };
  const auto psi = [](double x1, double x2) {
    const SmoothStep a = smooth_step(x1);
    const SmoothStep b = smooth_step(-x2);
    const SmoothStep c = smooth_step(-x1);
    const SmoothStep e = smooth_step(x2);
    return Psi{a.value * b.value + c.value * e.value,
               a.d1 * b.value - c.d1 * e.value,
               -a.value * b.d1 + c.value * e.d1,
               a.d2 * b.value + c.d2 * e.value,
               a.value * b.d2 + c.value * e.d2,
               -a.d1 * b.d1 - c.d1 * e.d1};
  };

  auto& u = card.pair;
  u.params = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma},
              {"delta", delta}, {"eps", eps},   {"eps_hat", eps_hat}};
  u.U = [=](const State& x) {
    const double s = x[0] + x[1];
    return eps * (2.5 + s * s - 2.0 * x[0] * x[1] * psi(x[0], x[1]).v) + eps_hat * x[2] * x[2];
  };
  u.grad_U = [=](const State& x) {
    const Psi q = psi(x[0], x[1]);
    const double s = x[0] + x[1];
    const double prod = x[0] * x[1];
    // h = x1 x2 psi
    const double h1 = x[1] * q.v + prod * q.d1;
    const double h2 = x[0] * q.v + prod * q.d2;
    return vec({eps * (2.0 * s - 2.0 * h1), eps * (2.0 * s - 2.0 * h2), 2.0 * eps_hat * x[2]});
  };
  u.hess_U = [=](const State& x) {
    const Psi q = psi(x[0], x[1]);
    const double prod = x[0] * x[1];
    const double h11 = 2.0 * x[1] * q.d1 + prod * q.d11;
    const double h22 = 2.0 * x[0] * q.d2 + prod * q.d22;
    const double h12 = q.v + x[0] * q.d1 + x[1] * q.d2 + prod * q.d12;
    Square h = Square::Zero(3, 3);
    h(0, 0) = eps * (2.0 - 2.0 * h11);
    h(1, 1) = eps * (2.0 - 2.0 * h22);
    h(0, 1) = h(1, 0) = eps * (2.0 - 2.0 * h12);
    h(2, 2) = 2.0 * eps_hat;
    return h;
  };
  u.U_bar = [=](const State&) { return -2.0 * eps * delta; };
  u.rho = 0.0;
  u.ubar_lower_bound = -2.0 * eps * delta;

  card.param_constraints = {constraint("eps_hat in (0, 4 eps delta / gamma]", [](const auto& q) {
    return q.at("eps") > 0.0 && q.at("eps_hat") > 0.0 &&
           q.at("eps_hat") <= 4.0 * q.at("eps") * q.at("delta") / q.at("gamma");
  })};
  card.box = cube(3, 0.0, 10.0);
  card.x0 = vec({0.5, 0.3, 0.2});
  finish(card);
  return card;
}

// V(y) = y^4 / 4 + y^2 / 2 on the position coordinate.
ModelCard make_langevin(double beta, double gamma, double eps) {
  ModelCard card;
  card.name = "langevin";
  card.notes = "Langevin dynamics with potential V(y) = y^4/4 + y^2/2, m = 1";
  auto& p = card.problem;
  p.d = 2;
  p.m = 1;
  p.mu = [=](const State& x) {
    return vec({x[1], -(std::pow(x[0], 3) + x[0]) - gamma * x[1]});
  };
  const double sb = std::sqrt(beta);
  p.sigma = [sb](const State&) {
    Diffusion s(2, 1);
    s << 0.0, sb;
    return s;
  };

  auto& u = card.pair;
  u.params = {{"beta", beta}, {"gamma", gamma}, {"eps", eps}};
  u.U = [=](const State& x) {
    const double y2 = x[0] * x[0];
    return eps * (0.25 * y2 * y2 + 0.5 * y2) + 0.5 * eps * x[1] * x[1];
  };
  u.grad_U = [=](const State& x) { return vec({eps * (std::pow(x[0], 3) + x[0]), eps * x[1]}); };
  u.hess_U = [=](const State& x) {
    Square h = Square::Zero(2, 2);
    h(0, 0) = eps * (3.0 * x[0] * x[0] + 1.0);
    h(1, 1) = eps;
    return h;
  };
  u.U_bar = [=](const State& x) {
    return eps * (gamma - 0.5 * eps * beta) * x[1] * x[1] - 0.5 * eps * beta;
  };
  u.rho = 0.0;
  u.ubar_lower_bound = -0.5 * eps * beta;

  card.param_constraints = {constraint("eps in (0, 2 gamma / beta]", [](const auto& q) {
    return q.at("eps") > 0.0 && q.at("eps") <= 2.0 * q.at("gamma") / q.at("beta");
  })};
  card.box = cube(2, -4.0, 4.0);
  card.x0 = vec({0.0, 0.0});
  card.residual_is_identity = true;
  finish(card);
  return card;
}

// V(x) = ||x||^4 / 4 + ||x||^2 / 2 on R^2. Then Laplace V = d (||x||^2 + 1) + 2 ||x||^2
// <= eta0 + 2 eta1 V with eta0 = d, eta1 = d + 2 and eta2 = 0.
ModelCard make_overdamped_langevin(double beta, double eps) {
  constexpr int d = 2;
  ModelCard card;
  card.name = "overdamped_langevin";
  card.notes = "Brownian dynamics dX = -grad V(X) dt + sqrt(beta) dW, V = ||x||^4/4 + ||x||^2/2";
  auto& p = card.problem;
  p.d = d;
  p.m = d;
  const auto grad_v = [](const State& x) { return State((x.squaredNorm() + 1.0) * x); };
  p.mu = [grad_v](const State& x) { return State(-grad_v(x)); };
  const double sb = std::sqrt(beta);
  p.sigma = [sb](const State&) { return Diffusion(sb * Diffusion::Identity(d, d)); };
  p.linear_part = [](const State& x) {
    return Square(-(x.squaredNorm() + 1.0) * Square::Identity(d, d));
  };

  const double eta0 = d;
  const double eta1 = d + 2.0;
  const double eta2 = 0.0;
  auto& u = card.pair;
  u.params = {{"beta", beta}, {"eps", eps}, {"eta0", eta0}, {"eta1", eta1}, {"eta2", eta2}};
  u.U = [=](const State& x) {
    const double r2 = x.squaredNorm();
    return eps * (0.25 * r2 * r2 + 0.5 * r2);
  };
  u.grad_U = [=](const State& x) { return State(eps * grad_v(x)); };
  u.hess_U = [=](const State& x) {
    Square h = (x.squaredNorm() + 1.0) * Square::Identity(d, d);
    h += 2.0 * (x * x.transpose());
    return Square(eps * h);
  };
  u.U_bar = [=](const State& x) {
    return eps * (1.0 - 0.5 * beta * (eta2 + eps)) * grad_v(x).squaredNorm() - 0.5 * eps * beta * eta0;
  };
  u.rho = beta * eta1;
  u.ubar_lower_bound = -0.5 * eps * beta * eta0;

  card.param_constraints = {
      constraint("eps in (0, 2 / beta - eta2]", [](const auto& q) {
        return q.at("eps") > 0.0 && q.at("eps") <= 2.0 / q.at("beta") - q.at("eta2");
      }),
      constraint("eta2 in [0, 2 / beta)", [](const auto& q) {
        return q.at("eta2") >= 0.0 && q.at("eta2") < 2.0 / q.at("beta");
      })};
  card.box = cube(d, -3.0, 3.0);
  card.x0 = vec({0.0, 0.0});
  finish(card);
  return card;
}

std::vector<ModelCard> model_zoo() {
  return {make_cubic1d(),       make_ginzburg_landau(),     make_lorenz(),
          make_van_der_pol(),   make_duffing_van_der_pol(), make_psychology(),
          make_sir(),           make_langevin(),            make_overdamped_langevin()};
}

std::vector<std::string> model_names() {
  return {"cubic1d",    "ginzburg_landau", "lorenz",   "van_der_pol",        "duffing_van_der_pol",
          "psychology", "sir",             "langevin", "overdamped_langevin"};
}

ModelCard model_by_name(std::string_view name) {
  if (name == "cubic1d") return make_cubic1d();
  if (name == "ginzburg_landau") return make_ginzburg_landau();
  if (name == "lorenz") return make_lorenz();
  if (name == "van_der_pol") return make_van_der_pol();
  if (name == "duffing_van_der_pol") return make_duffing_van_der_pol();
  if (name == "psychology") return make_psychology();
  if (name == "sir") return make_sir();
  if (name == "langevin") return make_langevin();
  if (name == "overdamped_langevin") return make_overdamped_langevin();
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

}  // namespace emsde
