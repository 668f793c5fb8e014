#pragma once

#include <vector>

#include "qscat/statevector.hpp"
#include "qscat/types.hpp"

namespace qscat {

enum class Boundary { Periodic, Open };

/// Chain parameters for H = -sum_j (J X_j X_{j+1} + h Z_j + g Z_j Z_{j+1}).
/// Periodic boundary identifies site N+1 with site 1; the two-site sums then
/// run over all N bonds, for Open over the first N-1. Sites are 1-based in
/// every public interface; site j lives on qubit j-1.
struct ModelParams {
  int n_sites = 2;
  double j_coupling = 0.0;
  double h_field = 0.0;
  double g_coupling = 0.0;
  Boundary boundary = Boundary::Periodic;

  void validate() const;
  /// Bonds as (site, site+1) pairs, 1-based, wrapping iff Periodic.
  std::vector<std::pair<int, int>> bonds() const;
};

/// Dense 2^N x 2^N Hamiltonian. Throws CapacityError above the dense cap.
Matrix build_hamiltonian(const ModelParams& params);

/// Jordan-Wigner creation operator c_j^dag = (prod_{i<j} -Z_i) sigma^-_j as a
/// dense matrix. Convention: |0> is the sigma_z = +1 (unoccupied) state and
/// sigma^- = |1><0| raises the occupation, so jw_creation populates sites.
Matrix jw_creation(int site, int n_sites);
Matrix jw_annihilation(int site, int n_sites);

enum class ParticleParity { Odd, Even };

/// Momentum values allowed on an N-site ring for the given particle-number
/// parity, ascending within (-pi, pi].
struct MomentumGrid {
  ParticleParity parity;
  std::vector<double> values;
};

MomentumGrid momentum_grid(int n_sites, ParticleParity parity);

struct GroundState {
  double energy = 0.0;
  StateVector state;
};

/// Lowest eigenpair of build_hamiltonian. The global phase is fixed so the
/// largest-magnitude amplitude is real positive (deterministic in degenerate
/// sectors up to eigensolver tie-breaking).
GroundState exact_ground_state(const ModelParams& params);

/// exp(-i H t) |state> via dense eigendecomposition.
StateVector exact_evolve(const StateVector& state, const ModelParams& params, double t);

/// Builds 4 sum_j n_j n_{j+1} from Jordan-Wigner matrices and the equivalent
/// Pauli form (1 - Z_j)(1 - Z_{j+1}) summed over the same bonds, and returns
/// the maximum elementwise deviation.
double four_fermion_identity_deviation(int n_sites, Boundary boundary);

}  // namespace qscat
