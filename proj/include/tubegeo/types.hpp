#pragma once

// Shared scalar/vector types and the error taxonomy used across the library.
//
// Points of a tube domain T_Omega = {z in C^n : Re z in Omega} are complex
// column vectors; base-domain points and directions are real column vectors.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace tubegeo {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

// Invalid call-site input: bad sizes, points outside required sets, malformed config.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but outside the mathematical domain of the operation
// (off-boundary point for a boundary map, nonsmooth base for a smooth-only map).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameter vectors whose direction map degenerates (excluded from the
// admissible set: constant direction or segment endpoint tangency).
class DegenerateParamsError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// An iterative procedure failed to reach its tolerance; carries the best residual.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// A search exhausted its step/restart budget before reaching its target.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tubegeo
