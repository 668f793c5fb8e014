#pragma once

#include <string>
#include <vector>

#include "qscat/types.hpp"

namespace qscat {

enum class GateKind {
  RX,
  RY,
  RZ,
  RXX,
  RYY,
  RZZ,
  H,
  X,
  Z,
  Cnot,
  Toffoli,
  GivensBlock,
};

bool gate_kind_has_angle(GateKind kind);
int gate_kind_arity(GateKind kind);
std::string gate_kind_name(GateKind kind);

/// One gate acting on an ordered list of qubits. All rotation kinds follow
/// RP(theta) = exp(-i P theta / 2) for their Pauli string P. The first listed
/// qubit is the most significant bit of the gate's local basis index, so
/// Cnot{c, t} is the textbook matrix with the control on top.
///
/// GivensBlock(theta) on (a, b) is exp[i (theta/2) (X_a Y_b - Y_a X_b)]: the
/// particle-conserving rotation |10> -> cos(theta)|10> - sin(theta)|01>,
/// |01> -> sin(theta)|10> + cos(theta)|01>.
struct Gate {
  GateKind kind;
  std::vector<int> qubits;
  double angle = 0.0;

  static Gate rx(int q, double theta) { return {GateKind::RX, {q}, theta}; }
  static Gate ry(int q, double theta) { return {GateKind::RY, {q}, theta}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, {q}, theta}; }
  static Gate rxx(int a, int b, double theta) { return {GateKind::RXX, {a, b}, theta}; }
  static Gate ryy(int a, int b, double theta) { return {GateKind::RYY, {a, b}, theta}; }
  static Gate rzz(int a, int b, double theta) { return {GateKind::RZZ, {a, b}, theta}; }
  static Gate h(int q) { return {GateKind::H, {q}}; }
  static Gate x(int q) { return {GateKind::X, {q}}; }
  static Gate z(int q) { return {GateKind::Z, {q}}; }
  static Gate cnot(int control, int target) { return {GateKind::Cnot, {control, target}}; }
  static Gate toffoli(int c1, int c2, int target) { return {GateKind::Toffoli, {c1, c2, target}}; }
  static Gate givens(int a, int b, double theta) { return {GateKind::GivensBlock, {a, b}, theta}; }

  void validate(int width) const;
};

enum class QubitRole { System, Control, Ancilla };

/// Ordered gate list over `width` qubits with per-qubit role tags.
/// System qubits are contiguous and first by convention.
struct Circuit {
  int width = 0;
  std::vector<Gate> gates;
  std::vector<QubitRole> roles;

  Circuit() = default;
  explicit Circuit(int w) : width(w), roles(static_cast<std::size_t>(w), QubitRole::System) {}

  Circuit& append(Gate gate);
  Circuit& append(const Circuit& other);  // widths must match
  Circuit inverse() const;                // reversed gates, negated angles
  std::size_t count_kind(GateKind kind) const;
};

/// Local 2^k x 2^k unitary of a gate (k = arity), first listed qubit = MSB.
Matrix gate_matrix(const Gate& gate);

/// Six-CNOT Toffoli decomposition (equal to Toffoli up to global phase).
Circuit decompose_toffoli(int c1, int c2, int target, int width);

/// Two-CNOT GivensBlock decomposition using only RX/RZ singles.
Circuit decompose_givens_block(int a, int b, double theta, int width);

/// Rewrites every gate into {single-qubit, Cnot}. Unitary is preserved up to
/// global phase (the Toffoli expansion contributes one).
Circuit decompose_to_cnots(const Circuit& circuit);

/// CNOT layers under greedy as-soon-as-possible scheduling after expanding
/// multi-qubit gates (GivensBlock -> 2 CNOTs, Toffoli -> 6, RXX/RYY/RZZ -> 2).
/// Single-qubit gates contribute zero depth.
int cnot_depth(const Circuit& circuit);

struct QasmOptions {
  bool expand_toffoli = false;  // emit 6-CNOT form instead of ccx
};

/// OpenQASM 3 text over the gate set {rz, rx, h, x, cx, ccx}; every other
/// kind is rewritten before emission.
std::string export_qasm(const Circuit& circuit, const QasmOptions& options = {});

}  // namespace qscat
