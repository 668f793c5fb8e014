#include "qscat/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

namespace qscat {

namespace {

const Complex kI{0.0, 1.0};

std::string format_angle(double angle) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", angle);
  return buf;
}

}  // namespace

bool gate_kind_has_angle(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::RZZ:
    case GateKind::GivensBlock:
      return true;
    default:
      return false;
  }
}

int gate_kind_arity(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      return 1;
    case GateKind::Toffoli:
      return 3;
    default:
      return 2;
  }
}

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::RXX: return "rxx";
    case GateKind::RYY: return "ryy";
    case GateKind::RZZ: return "rzz";
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::Cnot: return "cx";
    case GateKind::Toffoli: return "ccx";
    case GateKind::GivensBlock: return "givens";
  }
  return "?";
}

void Gate::validate(int width) const {
  if (static_cast<int>(qubits.size()) != gate_kind_arity(kind)) {
    throw std::invalid_argument(gate_kind_name(kind) + ": expected " +
                                std::to_string(gate_kind_arity(kind)) + " qubits, got " +
                                std::to_string(qubits.size()));
  }
  std::unordered_set<int> seen;
  for (int q : qubits) {
    if (q < 0 || q >= width) {
      throw std::invalid_argument(gate_kind_name(kind) + ": qubit " + std::to_string(q) +
                                  " out of range for width " + std::to_string(width));
    }
    if (!seen.insert(q).second) {
      throw std::invalid_argument(gate_kind_name(kind) + ": repeated qubit " + std::to_string(q));
    }
  }
}

Circuit& Circuit::append(Gate gate) {
  gate.validate(width);
  gates.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.width != width) {
    throw std::invalid_argument("circuit width mismatch: " + std::to_string(width) + " vs " +
                                std::to_string(other.width));
  }
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(width);
  inv.roles = roles;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    if (gate_kind_has_angle(g.kind)) g.angle = -g.angle;
    inv.gates.push_back(std::move(g));
  }
  return inv;
}

std::size_t Circuit::count_kind(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

Matrix gate_matrix(const Gate& gate) {
  const double c = std::cos(gate.angle / 2.0);
  const double s = std::sin(gate.angle / 2.0);
  switch (gate.kind) {
    case GateKind::RX: {
      Matrix m(2, 2);
      m << c, -kI * s, -kI * s, c;
      return m;
    }
    case GateKind::RY: {
      Matrix m(2, 2);
      m << c, -s, s, c;
      return m;
    }
    case GateKind::RZ: {
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = std::exp(-kI * gate.angle / 2.0);
      m(1, 1) = std::exp(kI * gate.angle / 2.0);
      return m;
    }
    case GateKind::H: {
      Matrix m(2, 2);
      const double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      return m;
    }
    case GateKind::X: {
      Matrix m(2, 2);
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::Z: {
      Matrix m(2, 2);
      m << 1, 0, 0, -1;
      return m;
    }
    case GateKind::Cnot: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = 1;
      m(2, 3) = m(3, 2) = 1;
      return m;
    }
    case GateKind::RXX: {
      Matrix m = Matrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i) m(i, i) = c;
      m(0, 3) = m(1, 2) = m(2, 1) = m(3, 0) = -kI * s;
      return m;
    }
    case GateKind::RYY: {
      Matrix m = Matrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i) m(i, i) = c;
      m(0, 3) = m(3, 0) = kI * s;
      m(1, 2) = m(2, 1) = -kI * s;
      return m;
    }
    case GateKind::RZZ: {
      Matrix m = Matrix::Zero(4, 4);
      const Complex minus = std::exp(-kI * gate.angle / 2.0);
      const Complex plus = std::exp(kI * gate.angle / 2.0);
      m(0, 0) = m(3, 3) = minus;
      m(1, 1) = m(2, 2) = plus;
      return m;
    }
    case GateKind::GivensBlock: {
      // cos/sin of the full angle: rotation within span{|01>, |10>}.
      const double cf = std::cos(gate.angle);
      const double sf = std::sin(gate.angle);
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(3, 3) = 1;
      m(1, 1) = cf;
      m(1, 2) = -sf;
      m(2, 1) = sf;
      m(2, 2) = cf;
      return m;
    }
    case GateKind::Toffoli: {
      Matrix m = Matrix::Identity(8, 8);
      m(6, 6) = m(7, 7) = 0;
      m(6, 7) = m(7, 6) = 1;
      return m;
    }
  }
  throw std::logic_error("unhandled gate kind");
}

Circuit decompose_toffoli(int c1, int c2, int target, int width) {
  Circuit c(width);
  const double t = kPi / 4.0;
  c.append(Gate::h(target));
  c.append(Gate::cnot(c2, target));
  c.append(Gate::rz(target, -t));
  c.append(Gate::cnot(c1, target));
  c.append(Gate::rz(target, t));
  c.append(Gate::cnot(c2, target));
  c.append(Gate::rz(target, -t));
  c.append(Gate::cnot(c1, target));
  c.append(Gate::rz(c2, t));
  c.append(Gate::rz(target, t));
  c.append(Gate::cnot(c1, c2));
  c.append(Gate::h(target));
  c.append(Gate::rz(c1, t));
  c.append(Gate::rz(c2, -t));
  c.append(Gate::cnot(c1, c2));
  return c;
}

Circuit decompose_givens_block(int a, int b, double theta, int width) {
  // Frame change RZ_b, RX pair maps the generator onto commuting ZZ+XX
  // rotations, which fold into a single CNOT conjugation.
  const double q = kPi / 2.0;
  Circuit c(width);
  c.append(Gate::rz(b, q));
  c.append(Gate::rx(a, q));
  c.append(Gate::rx(b, q));
  c.append(Gate::cnot(a, b));
  c.append(Gate::rz(b, theta));
  c.append(Gate::rx(a, theta));
  c.append(Gate::cnot(a, b));
  c.append(Gate::rx(a, -q));
  c.append(Gate::rx(b, -q));
  c.append(Gate::rz(b, -q));
  return c;
}

namespace {

// RZZ(theta) = CNOT(a,b) RZ_b(theta) CNOT(a,b).
Circuit decompose_rzz(int a, int b, double theta, int width) {
  Circuit c(width);
  c.append(Gate::cnot(a, b));
  c.append(Gate::rz(b, theta));
  c.append(Gate::cnot(a, b));
  return c;
}

Circuit decompose_rxx(int a, int b, double theta, int width) {
  Circuit c(width);
  c.append(Gate::h(a));
  c.append(Gate::h(b));
  c.append(decompose_rzz(a, b, theta, width));
  c.append(Gate::h(a));
  c.append(Gate::h(b));
  return c;
}

Circuit decompose_ryy(int a, int b, double theta, int width) {
  const double q = kPi / 2.0;
  Circuit c(width);
  c.append(Gate::rx(a, q));
  c.append(Gate::rx(b, q));
  c.append(decompose_rzz(a, b, theta, width));
  c.append(Gate::rx(a, -q));
  c.append(Gate::rx(b, -q));
  return c;
}

}  // namespace

Circuit decompose_to_cnots(const Circuit& circuit) {
  Circuit out(circuit.width);
  out.roles = circuit.roles;
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::RXX:
        out.append(decompose_rxx(g.qubits[0], g.qubits[1], g.angle, circuit.width));
        break;
      case GateKind::RYY:
        out.append(decompose_ryy(g.qubits[0], g.qubits[1], g.angle, circuit.width));
        break;
      case GateKind::RZZ:
        out.append(decompose_rzz(g.qubits[0], g.qubits[1], g.angle, circuit.width));
        break;
      case GateKind::GivensBlock:
        out.append(decompose_givens_block(g.qubits[0], g.qubits[1], g.angle, circuit.width));
        break;
      case GateKind::Toffoli:
        out.append(decompose_toffoli(g.qubits[0], g.qubits[1], g.qubits[2], circuit.width));
        break;
      default:
        out.append(g);
        break;
    }
  }
  return out;
}

int cnot_depth(const Circuit& circuit) {
  const Circuit flat = decompose_to_cnots(circuit);
  std::vector<int> layer(static_cast<std::size_t>(flat.width), 0);
  int depth = 0;
  for (const Gate& g : flat.gates) {
    if (g.kind != GateKind::Cnot) continue;
    const int l = std::max(layer[g.qubits[0]], layer[g.qubits[1]]) + 1;
    layer[g.qubits[0]] = layer[g.qubits[1]] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

std::string export_qasm(const Circuit& circuit, const QasmOptions& options) {
  // Rewrite to the exportable set first. RY and Z become RZ/RX products.
  Circuit flat(circuit.width);
  flat.roles = circuit.roles;
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::RY:
        // RY(t) = RZ(pi/2) RX(t) RZ(-pi/2) as an operator product.
        flat.append(Gate::rz(g.qubits[0], -kPi / 2.0));
        flat.append(Gate::rx(g.qubits[0], g.angle));
        flat.append(Gate::rz(g.qubits[0], kPi / 2.0));
        break;
      case GateKind::Z:
        flat.append(Gate::rz(g.qubits[0], kPi));
        break;
      case GateKind::RXX:
        flat.append(decompose_rxx(g.qubits[0], g.qubits[1], g.angle, circuit.width));
        break;
      case GateKind::RYY:
        flat.append(decompose_ryy(g.qubits[0], g.qubits[1], g.angle, circuit.width));
        break;
      case GateKind::RZZ:
        flat.append(decompose_rzz(g.qubits[0], g.qubits[1], g.angle, circuit.width));
        break;
      case GateKind::GivensBlock:
        flat.append(decompose_givens_block(g.qubits[0], g.qubits[1], g.angle, circuit.width));
        break;
      case GateKind::Toffoli:
        if (options.expand_toffoli) {
          flat.append(decompose_toffoli(g.qubits[0], g.qubits[1], g.qubits[2], circuit.width));
        } else {
          flat.append(g);
        }
        break;
      default:
        flat.append(g);
        break;
    }
  }

  std::string out;
  out += "OPENQASM 3.0;\n";
  out += "include \"stdgates.inc\";\n";
  out += "qubit[" + std::to_string(flat.width) + "] q;\n";
  for (const Gate& g : flat.gates) {
    switch (g.kind) {
      case GateKind::RX:
      case GateKind::RZ:
        out += gate_kind_name(g.kind) + "(" + format_angle(g.angle) + ") q[" +
               std::to_string(g.qubits[0]) + "];\n";
        break;
      case GateKind::H:
      case GateKind::X:
        out += gate_kind_name(g.kind) + " q[" + std::to_string(g.qubits[0]) + "];\n";
        break;
      case GateKind::Cnot:
        out += "cx q[" + std::to_string(g.qubits[0]) + "], q[" + std::to_string(g.qubits[1]) + "];\n";
        break;
      case GateKind::Toffoli:
        out += "ccx q[" + std::to_string(g.qubits[0]) + "], q[" + std::to_string(g.qubits[1]) +
               "], q[" + std::to_string(g.qubits[2]) + "];\n";
        break;
      default:
        throw std::invalid_argument("gate kind not exportable: " + gate_kind_name(g.kind));
    }
  }
  return out;
}

}  // namespace qscat
