#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qscat {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Largest qubit count for which dense 2^n x 2^n operators are built.
/// Beyond this the toolkit only offers statevector simulation.
inline constexpr int kDenseOperatorCap = 12;

/// Requested object would exceed the dense-representation cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Post-selection on an outcome that carries (numerically) zero weight.
class PostSelectionError : public std::runtime_error {
 public:
  explicit PostSelectionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qscat
