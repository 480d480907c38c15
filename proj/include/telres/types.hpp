// types.hpp — Scalar/matrix aliases, shared tolerances, error types

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace telres {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
// Structural checks: Hermiticity, trace, unitarity, norm.
inline constexpr double structural = 1e-10;
// Eigenvalue positivity floor for PSD/PPT checks.
inline constexpr double eigen_floor = -1e-9;
// Derived-quantity comparisons.
inline constexpr double derived = 1e-9;
}  // namespace tol

// Size caps (dense double precision at desk scale).
inline constexpr Eigen::Index kMaxPureDim = 4096;     // 2n <= 12 qubits
inline constexpr Eigen::Index kMaxDensityDim = 1024;  // 2n <= 10 qubits

// A state or operator failed one of its type invariants. The message names
// the failing check and the offending residual.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (syntax, missing fields, wrong shapes).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace telres
