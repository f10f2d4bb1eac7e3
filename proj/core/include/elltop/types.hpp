#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace elltop {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Cplx kI{0.0, 1.0};
inline const Cplx kTwoPiI{0.0, 2.0 * kPi};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Im(tau) out of range for the theta series.
struct BadModulus : Error {
  using Error::Error;
};

// Theta truncation cap reached before the stopping rule fired.
struct NonConvergent : Error {
  using Error::Error;
};

// An argument fell within eps_pole of the lattice Z + tau*Z.
struct PoleProximity : Error {
  PoleProximity(const std::string& arg_name, Cplx value)
      : Error("pole proximity: argument '" + arg_name + "' = (" +
              std::to_string(value.real()) + "," + std::to_string(value.imag()) +
              ") is too close to the lattice"),
        argument(arg_name),
        where(value) {}
  std::string argument;
  Cplx where;
};

// q_i - q_j hit the lattice for distinct particles i, j (1-based in messages).
struct Collision : Error {
  Collision(int i_, int j_)
      : Error("collision: q_" + std::to_string(i_ + 1) + " - q_" + std::to_string(j_ + 1) +
              " is on the lattice"),
        i(i_),
        j(j_) {}
  int i;
  int j;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// A required constraint (e.g. tr S^{ii} = 0 for the non-relativistic families) is violated.
struct ConstraintViolated : Error {
  using Error::Error;
};

struct NonFinite : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace elltop
