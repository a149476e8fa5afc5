#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ngb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

// Fixed tolerances. These are part of the library contract, not knobs.
namespace tol {
inline constexpr double hermitian = 1e-12;        // max |rho_mn - conj(rho_nm)|
inline constexpr double trace = 1e-10;            // |Tr rho - 1|
inline constexpr double psd = 1e-10;              // eigenvalue floor
inline constexpr double tail_mass = 1e-8;         // cutoff convergence
inline constexpr double wigner_positive = 1e-9;   // classification threshold
inline constexpr double symmetric_class = 1e-9;   // |d|, |g11-g22|, |g12|
inline constexpr double singular_system = 1e-13;  // 3x3 determinant floor
inline constexpr double violation = 1e-6;         // oracle margin
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Tail mass at the truncation edge too large for the requested operation.
class CutoffTooSmall : public Error {
 public:
  using Error::Error;
};

// Fock level beyond the documented stability ceiling of the Wigner evaluator.
class UnsupportedRange : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class GridUnderresolved : public Error {
 public:
  using Error::Error;
};

class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

class InfeasibleRegion : public Error {
 public:
  using Error::Error;
};

// An internal bracket/sign assumption failed; indicates a formula bug.
class Inconsistency : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ngb
