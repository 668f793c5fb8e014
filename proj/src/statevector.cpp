#include "qscat/statevector.hpp"

#include <algorithm>
#include <cmath>

namespace qscat {

StateVector StateVector::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw std::invalid_argument("unsupported qubit count: " + std::to_string(n_qubits));
  }
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes = Vector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << n_qubits));
  if (index >= s.dim()) {
    throw std::invalid_argument("basis index out of range");
  }
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  amplitudes /= n;
}

void apply_dense_on_qubits(StateVector& state, const Matrix& matrix, const std::vector<int>& qubits) {
  const int k = static_cast<int>(qubits.size());
  const std::uint64_t local_dim = std::uint64_t{1} << k;
  if (matrix.rows() != static_cast<Eigen::Index>(local_dim) || matrix.cols() != matrix.rows()) {
    throw std::invalid_argument("matrix dimension does not match qubit count");
  }
  for (int q : qubits) {
    if (q < 0 || q >= state.n_qubits) {
      throw std::invalid_argument("qubit index out of range: " + std::to_string(q));
    }
  }

  // Bit position of each local-index bit; qubits[0] is the local MSB.
  std::vector<std::uint64_t> bit(local_dim > 1 ? k : 1);
  for (int j = 0; j < k; ++j) {
    bit[j] = std::uint64_t{1} << qubits[j];
  }
  std::vector<int> sorted(qubits);
  std::sort(sorted.begin(), sorted.end());

  std::vector<Complex> scratch(local_dim);
  const std::uint64_t n_blocks = state.dim() >> k;
  for (std::uint64_t block = 0; block < n_blocks; ++block) {
    // Expand `block` by inserting zero bits at the gate qubits' positions.
    std::uint64_t base = block;
    for (int j = 0; j < k; ++j) {
      const std::uint64_t mask = (std::uint64_t{1} << sorted[j]) - 1;
      base = (base & mask) | ((base & ~mask) << 1);
    }
    for (std::uint64_t l = 0; l < local_dim; ++l) {
      std::uint64_t idx = base;
      for (int j = 0; j < k; ++j) {
        if ((l >> (k - 1 - j)) & 1) idx |= bit[j];
      }
      scratch[l] = state.amplitudes(static_cast<Eigen::Index>(idx));
    }
    for (std::uint64_t r = 0; r < local_dim; ++r) {
      Complex acc = 0.0;
      for (std::uint64_t l = 0; l < local_dim; ++l) {
        acc += matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) * scratch[l];
      }
      std::uint64_t idx = base;
      for (int j = 0; j < k; ++j) {
        if ((r >> (k - 1 - j)) & 1) idx |= bit[j];
      }
      state.amplitudes(static_cast<Eigen::Index>(idx)) = acc;
    }
  }
}

void apply_gate_in_place(StateVector& state, const Gate& gate) {
  gate.validate(state.n_qubits);
  apply_dense_on_qubits(state, gate_matrix(gate), gate.qubits);
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  apply_gate_in_place(state, gate);
  return state;
}

void apply_circuit_in_place(StateVector& state, const Circuit& circuit) {
  if (circuit.width != state.n_qubits) {
    throw std::invalid_argument("circuit width " + std::to_string(circuit.width) +
                                " does not match state width " + std::to_string(state.n_qubits));
  }
  for (const Gate& g : circuit.gates) {
    apply_gate_in_place(state, g);
  }
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
  apply_circuit_in_place(state, circuit);
  return state;
}

ProjectionResult project_qubit(const StateVector& state, int qubit, int outcome) {
  if (qubit < 0 || qubit >= state.n_qubits) {
    throw std::invalid_argument("qubit index out of range: " + std::to_string(qubit));
  }
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("outcome must be 0 or 1");
  }
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  ProjectionResult result;
  result.state.n_qubits = state.n_qubits;
  result.state.amplitudes = Vector::Zero(state.amplitudes.size());
  double weight = 0.0;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    const bool set = (i & mask) != 0;
    if (set == (outcome == 1)) {
      const Complex a = state.amplitudes(static_cast<Eigen::Index>(i));
      result.state.amplitudes(static_cast<Eigen::Index>(i)) = a;
      weight += std::norm(a);
    }
  }
  result.probability = weight;
  if (weight < 1e-12) {
    throw PostSelectionError("post-selection on qubit " + std::to_string(qubit) + " outcome " +
                             std::to_string(outcome) + " has zero probability");
  }
  result.state.amplitudes /= std::sqrt(weight);
  return result;
}

StateVector remove_qubit(const StateVector& state, int qubit, int outcome) {
  ProjectionResult projected = project_qubit(state, qubit, outcome);
  StateVector out;
  out.n_qubits = state.n_qubits - 1;
  out.amplitudes = Vector::Zero(static_cast<Eigen::Index>(state.dim() >> 1));
  const std::uint64_t low_mask = (std::uint64_t{1} << qubit) - 1;
  const std::uint64_t offset = (outcome == 1) ? (std::uint64_t{1} << qubit) : 0;
  for (std::uint64_t i = 0; i < out.dim(); ++i) {
    const std::uint64_t src = (i & low_mask) | ((i & ~low_mask) << 1) | offset;
    out.amplitudes(static_cast<Eigen::Index>(i)) =
        projected.state.amplitudes(static_cast<Eigen::Index>(src));
  }
  return out;
}

StateVector append_zero_qubits(const StateVector& state, int extra) {
  if (extra < 0) {
    throw std::invalid_argument("extra qubit count must be nonnegative");
  }
  StateVector out;
  out.n_qubits = state.n_qubits + extra;
  out.amplitudes = Vector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << out.n_qubits));
  out.amplitudes.head(state.amplitudes.size()) = state.amplitudes;
  return out;
}

double expectation_pauli(const StateVector& state, std::string_view pauli) {
  if (static_cast<int>(pauli.size()) != state.n_qubits) {
    throw std::invalid_argument("pauli string length must equal qubit count");
  }
  std::uint64_t flip = 0;
  std::uint64_t y_mask = 0;
  std::uint64_t z_mask = 0;
  for (int q = 0; q < state.n_qubits; ++q) {
    switch (pauli[static_cast<std::size_t>(q)]) {
      case 'I': break;
      case 'X': flip |= std::uint64_t{1} << q; break;
      case 'Y':
        flip |= std::uint64_t{1} << q;
        y_mask |= std::uint64_t{1} << q;
        break;
      case 'Z': z_mask |= std::uint64_t{1} << q; break;
      default:
        throw std::invalid_argument("pauli string may contain only I, X, Y, Z");
    }
  }
  Complex acc = 0.0;
  const int n_y = static_cast<int>(__builtin_popcountll(y_mask));
  // i^{n_y} base phase; each Y contributes an extra sign when its input bit is 1,
  // each Z a sign when its bit is 1.
  Complex y_base = 1.0;
  for (int j = 0; j < (n_y & 3); ++j) y_base *= Complex(0.0, 1.0);
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    const Complex amp = state.amplitudes(static_cast<Eigen::Index>(b));
    if (amp == Complex(0.0, 0.0)) continue;
    const int sign_bits =
        static_cast<int>(__builtin_popcountll(b & y_mask) + __builtin_popcountll(b & z_mask));
    const Complex phase = ((sign_bits & 1) ? -1.0 : 1.0) * y_base;
    acc += std::conj(state.amplitudes(static_cast<Eigen::Index>(b ^ flip))) * phase * amp;
  }
  return acc.real();
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("state width mismatch");
  }
  return a.amplitudes.dot(b.amplitudes);
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

}  // namespace qscat
