#pragma once

#include <cstdint>
#include <string_view>

#include "qscat/circuit.hpp"
#include "qscat/types.hpp"

namespace qscat {

/// Normalized complex amplitudes over 2^n computational basis states.
/// Bit q of the basis index is qubit q (little endian: qubit 0 = LSB).
/// |0> is the sigma_z = +1 eigenstate.
struct StateVector {
  int n_qubits = 0;
  Vector amplitudes;

  static StateVector zero_state(int n_qubits);
  static StateVector basis_state(int n_qubits, std::uint64_t index);

  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits; }
  double norm() const { return amplitudes.norm(); }
  void normalize();
};

void apply_gate_in_place(StateVector& state, const Gate& gate);
StateVector apply_gate(StateVector state, const Gate& gate);

void apply_circuit_in_place(StateVector& state, const Circuit& circuit);
StateVector apply_circuit(StateVector state, const Circuit& circuit);

/// Applies `matrix` (2^k x 2^k, first listed qubit = MSB) to the given qubits.
/// The matrix need not be unitary; no renormalization is performed.
void apply_dense_on_qubits(StateVector& state, const Matrix& matrix, const std::vector<int>& qubits);

struct ProjectionResult {
  StateVector state;    // renormalized
  double probability;   // pre-projection weight of the retained subspace
};

/// Projects one qubit onto |outcome> and renormalizes.
/// Throws PostSelectionError when the retained weight is numerically zero.
ProjectionResult project_qubit(const StateVector& state, int qubit, int outcome);

/// project_qubit followed by dropping the (now product) qubit from the register.
StateVector remove_qubit(const StateVector& state, int qubit, int outcome);

/// Appends `extra` qubits in |0> as new most-significant positions.
StateVector append_zero_qubits(const StateVector& state, int extra);

/// <psi| P |psi> for a Pauli string over {I,X,Y,Z}; pauli[q] acts on qubit q.
double expectation_pauli(const StateVector& state, std::string_view pauli);

Complex inner_product(const StateVector& a, const StateVector& b);  // <a|b>
double fidelity(const StateVector& a, const StateVector& b);        // |<a|b>|^2

}  // namespace qscat
