#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace emsde {

/// Upper bound on state and noise dimensions. Every built-in model has d, m <= 3;
/// the headroom lets callers define small custom systems without heap traffic.
inline constexpr int kMaxDim = 6;

/// Dense state vector, fixed capacity so hot loops never allocate.
using State = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
/// Brownian increment in R^m.
using Noise = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
/// d x m diffusion matrix.
using Diffusion = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
/// d x d matrix (Hessians, semilinear drift splits).
using Square = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Hilbert-Schmidt (Frobenius) norm of a d x m matrix.
template <typename Derived>
double hs_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.norm();
}

template <typename Derived>
double hs_norm_squared(const Eigen::MatrixBase<Derived>& a) {
  return a.squaredNorm();
}

// Error taxonomy. Everything derives from the std hierarchy so callers can
// catch broadly.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formats a state as "(x1, x2, ...)" for error messages.
std::string format_state(const State& x);

}  // namespace emsde
