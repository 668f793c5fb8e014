#include "qscat/observables.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qscat {

std::vector<double> site_occupations(const StateVector& state, int n_system) {
  if (n_system < 0 || n_system > state.n_qubits) {
    throw std::invalid_argument("n_system out of range");
  }
  std::vector<double> occ(static_cast<std::size_t>(n_system), 0.0);
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    const double w = std::norm(state.amplitudes(static_cast<Eigen::Index>(b)));
    if (w == 0.0) continue;
    for (int q = 0; q < n_system; ++q) {
      if ((b >> q) & 1) occ[static_cast<std::size_t>(q)] += w;
    }
  }
  return occ;
}

double bipartite_entropy(const StateVector& state, int cut) {
  const int n = state.n_qubits;
  if (cut < 1 || cut >= n) {
    throw std::invalid_argument("cut must satisfy 1 <= cut < n_qubits");
  }
  // Reshape into M(left, right) and diagonalize the smaller Gram matrix;
  // the nonzero spectra of M M^dag and M^dag M coincide (Schmidt symmetry).
  const std::uint64_t left_dim = std::uint64_t{1} << cut;
  const std::uint64_t right_dim = std::uint64_t{1} << (n - cut);
  const bool left_small = left_dim <= right_dim;
  const std::uint64_t small_dim = left_small ? left_dim : right_dim;

  Matrix gram = Matrix::Zero(static_cast<Eigen::Index>(small_dim),
                             static_cast<Eigen::Index>(small_dim));
  // M(l, r) = amplitudes[r * left_dim + l]
  Eigen::Map<const Matrix> m(state.amplitudes.data(), static_cast<Eigen::Index>(left_dim),
                             static_cast<Eigen::Index>(right_dim));
  if (left_small) {
    gram.noalias() = m * m.adjoint();
  } else {
    gram.noalias() = (m.adjoint() * m).eval();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double p = solver.eigenvalues()(i);
    if (p > 1e-15) {
      entropy -= p * std::log(p);
    }
  }
  return entropy;
}

}  // namespace qscat
