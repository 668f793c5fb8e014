#include "qscat/model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qscat {

namespace {

void check_dense_cap(int n_qubits, const char* what) {
  if (n_qubits > kDenseOperatorCap) {
    throw CapacityError(std::string(what) + ": " + std::to_string(n_qubits) +
                        " qubits exceeds the dense cap of " + std::to_string(kDenseOperatorCap));
  }
}

void check_site(int site, int n_sites) {
  if (site < 1 || site > n_sites) {
    throw std::invalid_argument("site " + std::to_string(site) + " out of range [1, " +
                                std::to_string(n_sites) + "]");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

void ModelParams::validate() const {
  if (n_sites < 2) {
    throw std::invalid_argument("n_sites must be at least 2");
  }
  for (double v : {j_coupling, h_field, g_coupling}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("couplings must be finite");
    }
  }
}

std::vector<std::pair<int, int>> ModelParams::bonds() const {
  std::vector<std::pair<int, int>> out;
  const int last = (boundary == Boundary::Periodic) ? n_sites : n_sites - 1;
  for (int j = 1; j <= last; ++j) {
    out.emplace_back(j, j % n_sites + 1);
  }
  return out;
}

Matrix build_hamiltonian(const ModelParams& params) {
  params.validate();
  check_dense_cap(params.n_sites, "build_hamiltonian");
  const int n = params.n_sites;
  const std::uint64_t dim = std::uint64_t{1} << n;
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

  // Z and ZZ terms are diagonal; sigma_z on qubit q reads bit q as +1 for 0.
  auto z_of = [](std::uint64_t b, int qubit) { return ((b >> qubit) & 1) ? -1.0 : 1.0; };
  const auto bond_list = params.bonds();
  for (std::uint64_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int site = 1; site <= n; ++site) {
      diag -= params.h_field * z_of(b, site - 1);
    }
    for (const auto& [s1, s2] : bond_list) {
      diag -= params.g_coupling * z_of(b, s1 - 1) * z_of(b, s2 - 1);
    }
    h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = diag;
  }
  // XX flips the two bond qubits with unit matrix element.
  for (const auto& [s1, s2] : bond_list) {
    const std::uint64_t mask = (std::uint64_t{1} << (s1 - 1)) | (std::uint64_t{1} << (s2 - 1));
    for (std::uint64_t b = 0; b < dim; ++b) {
      h(static_cast<Eigen::Index>(b ^ mask), static_cast<Eigen::Index>(b)) -= params.j_coupling;
    }
  }
  return h;
}

Matrix jw_creation(int site, int n_sites) {
  check_site(site, n_sites);
  check_dense_cap(n_sites, "jw_creation");
  Matrix id = Matrix::Identity(2, 2);
  Matrix minus_z(2, 2);
  minus_z << -1, 0, 0, 1;
  Matrix sigma_minus = Matrix::Zero(2, 2);
  sigma_minus(1, 0) = 1.0;  // |1><0|, raises occupation

  // Qubit 0 is the least significant bit, hence the rightmost Kronecker factor.
  Matrix out(1, 1);
  out(0, 0) = 1.0;
  for (int q = n_sites - 1; q >= 0; --q) {
    const Matrix& factor = (q == site - 1) ? sigma_minus : (q < site - 1 ? minus_z : id);
    out = kron(out, factor);
  }
  return out;
}

Matrix jw_annihilation(int site, int n_sites) {
  return jw_creation(site, n_sites).adjoint();
}

MomentumGrid momentum_grid(int n_sites, ParticleParity parity) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw std::invalid_argument("momentum_grid requires even n_sites >= 2");
  }
  MomentumGrid grid;
  grid.parity = parity;
  grid.values.reserve(static_cast<std::size_t>(n_sites));
  if (parity == ParticleParity::Odd) {
    // 0, ±2pi/N, ±4pi/N, ..., pi
    for (int m = -(n_sites / 2) + 1; m <= n_sites / 2; ++m) {
      grid.values.push_back(2.0 * kPi * m / n_sites);
    }
  } else {
    // ±pi/N, ±3pi/N, ..., ±(N-1)pi/N
    for (int m = -(n_sites / 2) + 1; m <= n_sites / 2; ++m) {
      grid.values.push_back((2.0 * m - 1.0) * kPi / n_sites);
    }
  }
  return grid;
}

GroundState exact_ground_state(const ModelParams& params) {
  // H is real symmetric in the computational basis; solve in real arithmetic.
  const Eigen::MatrixXd h = build_hamiltonian(params).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed");
  }
  GroundState gs;
  gs.energy = solver.eigenvalues()(0);
  gs.state.n_qubits = params.n_sites;
  gs.state.amplitudes = solver.eigenvectors().col(0).cast<Complex>();
  gs.state.normalize();
  // Fix the global phase: largest-magnitude amplitude real positive.
  Eigen::Index argmax = 0;
  double best = 0.0;
  for (Eigen::Index i = 0; i < gs.state.amplitudes.size(); ++i) {
    const double mag = std::abs(gs.state.amplitudes(i));
    if (mag > best + 1e-12) {
      best = mag;
      argmax = i;
    }
  }
  const Complex pivot = gs.state.amplitudes(argmax);
  if (std::abs(pivot) > 0.0) {
    gs.state.amplitudes *= std::conj(pivot) / std::abs(pivot);
  }
  return gs;
}

StateVector exact_evolve(const StateVector& state, const ModelParams& params, double t) {
  if (state.n_qubits != params.n_sites) {
    throw std::invalid_argument("state width does not match n_sites");
  }
  const Eigen::MatrixXd h = build_hamiltonian(params).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed");
  }
  const Vector coeffs = solver.eigenvectors().transpose().cast<Complex>() * state.amplitudes;
  Vector rotated(coeffs.size());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    rotated(i) = std::exp(Complex(0.0, -solver.eigenvalues()(i) * t)) * coeffs(i);
  }
  StateVector out;
  out.n_qubits = state.n_qubits;
  out.amplitudes = solver.eigenvectors().cast<Complex>() * rotated;
  return out;
}

double four_fermion_identity_deviation(int n_sites, Boundary boundary) {
  check_dense_cap(n_sites, "four_fermion_identity_deviation");
  ModelParams params;
  params.n_sites = n_sites;
  params.boundary = boundary;
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  Matrix lhs = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  Matrix rhs = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

  auto z_on = [&](int site) {
    Matrix z = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
      z(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) =
          ((b >> (site - 1)) & 1) ? -1.0 : 1.0;
    }
    return z;
  };

  for (const auto& [s1, s2] : params.bonds()) {
    lhs += 4.0 * jw_creation(s1, n_sites) * jw_annihilation(s1, n_sites) *
           jw_creation(s2, n_sites) * jw_annihilation(s2, n_sites);
    rhs += (id - z_on(s1)) * (id - z_on(s2));
  }
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace qscat
