// Shared numeric types, residuals and error classes.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace zfb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Max-norm of a matrix difference, labelled with the relation and momenta
/// it was computed for.
struct Residual {
  double value = 0.0;
  std::string context;
};

/// Residual of one named relation, as returned by the multi-relation checkers.
struct RelationResidual {
  std::string relation;
  double value = 0.0;
};

/// Momentum outside the grid, non-finite input, malformed word.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Particle number would exceed the truncation of the Fock space.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Invalid run configuration or a reflection matrix that was not admitted.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing entry in a tabulated reflection matrix.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Entrywise max-norm; 0 for an empty matrix.
double max_norm(const Matrix& m);

/// Formats a double with a fixed, locale-independent representation.
std::string format_real(double x);

}  // namespace zfb
